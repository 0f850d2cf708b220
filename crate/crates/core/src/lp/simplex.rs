//! Dense two-phase simplex over the rationals with Bland's rule.
//!
//! Meant for cross-checking small instances; cost grows with the full tableau.

use num_traits::{Signed, Zero};

use super::instance::{Cmp, LpInstance};
use crate::rational::{int, Rational};

/// Largest instance the exact solver accepts.
pub const EXACT_MAX_VARS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome {
    Optimal { objective: Rational, values: Vec<Rational> },
    Infeasible,
    Unbounded,
    IterationLimit,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs; last entry is minus the objective value.
    cost: Vec<Rational>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn set_cost(&mut self, c: &[Rational]) {
        let mut cost = vec![Rational::zero(); self.width + 1];
        cost[..c.len()].clone_from_slice(c);
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            let f = cost[b].clone();
            for (v, rv) in cost.iter_mut().zip(&self.rows[r]) {
                if !rv.is_zero() {
                    *v -= &f * rv;
                }
            }
        }
        self.cost = cost;
    }

    /// Bland iterations over columns `< allowed`. `Ok(true)` when optimal.
    fn run(&mut self, allowed: usize, limit: &mut usize) -> Result<bool, ExactOutcome> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return Ok(true);
            };
            if *limit == 0 {
                return Err(ExactOutcome::IterationLimit);
            }
            *limit -= 1;
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(ExactOutcome::Unbounded);
            };
            self.pivot(r, c);
        }
    }
}

/// Minimises `Σ cᵢvᵢ` over `v ≥ 0` subject to the instance constraints.
pub fn solve_exact(inst: &LpInstance, objective: &[Rational], max_iters: usize) -> ExactOutcome {
    let n = inst.num_vars();
    let m = inst.constraints.len();
    // Column layout: structural | one slack per inequality | one artificial per row.
    let n_slack = inst.constraints.iter().filter(|c| c.cmp != Cmp::Eq).count();
    let art0 = n + n_slack;
    let width = art0 + m;
    let mut rows = Vec::with_capacity(m);
    let mut slack = n;
    for (k, c) in inst.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (v, w) in &c.terms {
            row[*v] += w;
        }
        match c.cmp {
            Cmp::Le => {
                row[slack] = int(1);
                slack += 1;
            }
            Cmp::Ge => {
                row[slack] = int(-1);
                slack += 1;
            }
            Cmp::Eq => {}
        }
        row[width] = c.rhs.clone();
        if row[width].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + k] = int(1);
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (art0..width).collect(), cost: Vec::new(), width };
    let mut limit = max_iters;

    let mut phase1 = vec![Rational::zero(); width];
    for v in phase1.iter_mut().skip(art0) {
        *v = int(1);
    }
    t.set_cost(&phase1);
    if let Err(e) = t.run(width, &mut limit) {
        return e;
    }
    if !t.cost[width].is_zero() {
        return ExactOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis, dropping redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= art0 {
            match (0..art0).find(|&j| !t.rows[r][j].is_zero()) {
                Some(c) => t.pivot(r, c),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    t.set_cost(objective);
    if let Err(e) = t.run(art0, &mut limit) {
        return e;
    }
    let mut values = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            values[b] = t.rows[r][width].clone();
        }
    }
    let objective = objective.iter().zip(&values).fold(Rational::zero(), |a, (c, v)| a + c * v);
    ExactOutcome::Optimal { objective, values }
}
