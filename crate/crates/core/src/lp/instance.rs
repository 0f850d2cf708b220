//! The synthesis LP, built with exact coefficients.
//!
//! Only `g` is solved for; the game is `(g, gᵀ)`. Off-diagonal entries are
//! split as `g(x,y) = p − n` with `p, n ≥ 0`; the diagonal is forced to
//! `t_τ(x,x)/2` by `g + gᵀ = t_τ` and enters as a constant.
//!
//! Validity of row `y` at `λ` is imposed in the scaled form
//! `Σ_x x(1+λ)/(x+λ)·g(x,y) ≥ μ·λ/(1+λ)·Σ_x |g(x,y)|`, whose limit `λ → ∞`
//! is the first moment and whose limit `λ → 0` is `−g(0,y) ≥ 0`.

use num_traits::{Signed, Zero};

use super::LpError;
use crate::moves::{Coordinate, Move2D};
use crate::profile::target_move;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `g(i,j) + g(j,i) = t(i,j)` for `i < j`.
    Symmetry(usize, usize),
    RowSum(usize),
    Lambda { row: usize, lambda: Rational },
    Moment(usize),
    /// `g(0, j) ≤ 0`.
    ZeroLimit(usize),
    Fixed(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, Rational)>,
    pub cmp: Cmp,
    pub rhs: Rational,
    pub kind: ConstraintKind,
}

/// Off-diagonal entry `(i, j)` (grid indices, `x = grid[i]`, row `y = grid[j]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    /// Index of `p`; `n` is `pos + 1`.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpInstance {
    pub tau: Rational,
    pub grid: Vec<Coordinate>,
    pub margin: Rational,
    pub entries: Vec<Entry>,
    /// `g(grid[k], grid[k])`.
    pub diagonal: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// Set when a requested fixing contradicts the forced diagonal.
    pub contradiction: Option<String>,
}

fn omega(lambda: &Rational) -> Rational {
    lambda / (int(1) + lambda)
}

impl LpInstance {
    pub fn new(
        tau: &Rational,
        grid: &[Coordinate],
        lambdas: &[Rational],
        margin: &Rational,
        fixed: &[((Coordinate, Coordinate), Rational)],
    ) -> Result<Self, LpError> {
        if lambdas.iter().any(|l| !l.is_positive()) {
            return Err(LpError::BadSamples(String::from("lambda samples must be positive")));
        }
        let t = target_move(tau)?;
        let n = grid.len();
        let mut entries = Vec::with_capacity(n * n.saturating_sub(1));
        for j in 0..n {
            for i in 0..n {
                if i != j {
                    entries.push(Entry { i, j, pos: 2 * entries.len() });
                }
            }
        }
        let diagonal: Vec<Rational> = grid.iter().map(|c| t.get(c, c) / int(2)).collect();
        let mut inst = LpInstance {
            tau: tau.clone(),
            grid: grid.to_vec(),
            margin: margin.clone(),
            entries,
            diagonal,
            constraints: Vec::new(),
            contradiction: None,
        };
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (inst.entry(i, j), inst.entry(j, i));
                inst.constraints.push(Constraint {
                    terms: vec![(a, int(1)), (a + 1, int(-1)), (b, int(1)), (b + 1, int(-1))],
                    cmp: Cmp::Eq,
                    rhs: t.get(&grid[i], &grid[j]),
                    kind: ConstraintKind::Symmetry(i, j),
                });
            }
        }
        for j in 0..n {
            let mut terms = Vec::new();
            for i in (0..n).filter(|&i| i != j) {
                let p = inst.entry(i, j);
                terms.push((p, int(1)));
                terms.push((p + 1, int(-1)));
            }
            inst.constraints.push(Constraint {
                terms,
                cmp: Cmp::Eq,
                rhs: -inst.diagonal[j].clone(),
                kind: ConstraintKind::RowSum(j),
            });
            inst.push_moment(j);
            if grid[0].is_zero() && j != 0 {
                let p = inst.entry(0, j);
                inst.constraints.push(Constraint {
                    terms: vec![(p, int(1)), (p + 1, int(-1))],
                    cmp: Cmp::Le,
                    rhs: Rational::zero(),
                    kind: ConstraintKind::ZeroLimit(j),
                });
            }
            for l in lambdas {
                inst.push_lambda(j, l);
            }
        }
        for ((x, y), v) in fixed {
            let i = grid.iter().position(|c| c == x);
            let j = grid.iter().position(|c| c == y);
            let (Some(i), Some(j)) = (i, j) else {
                return Err(LpError::BadSamples(format!("fixed point ({x}, {y}) is off the grid")));
            };
            if i == j {
                if &inst.diagonal[i] != v {
                    inst.contradiction = Some(format!(
                        "g({x},{x}) is forced to {} but fixed to {v}",
                        inst.diagonal[i]
                    ));
                }
                continue;
            }
            let p = inst.entry(i, j);
            inst.constraints.push(Constraint {
                terms: vec![(p, int(1)), (p + 1, int(-1))],
                cmp: Cmp::Eq,
                rhs: v.clone(),
                kind: ConstraintKind::Fixed(i, j),
            });
        }
        Ok(inst)
    }

    pub fn num_vars(&self) -> usize {
        2 * self.entries.len()
    }

    /// Index of `p` for the off-diagonal entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j);
        let n = self.grid.len();
        2 * (j * (n - 1) + if i < j { i } else { i - 1 })
    }

    /// `Σ|g(x,x)|`, the part of `∥g∥₁` the objective leaves out.
    pub fn objective_offset(&self) -> Rational {
        self.diagonal.iter().fold(Rational::zero(), |a, d| a + d.abs())
    }

    fn push_scaled(&mut self, j: usize, weight: impl Fn(&Rational) -> Rational, slack: Rational, kind: ConstraintKind) {
        let n = self.grid.len();
        let mut terms = Vec::with_capacity(2 * n);
        for i in (0..n).filter(|&i| i != j) {
            let w = weight(self.grid[i].value());
            let p = self.entry(i, j);
            let (a, b) = (&w - &slack, -&w - &slack);
            if !a.is_zero() {
                terms.push((p, a));
            }
            if !b.is_zero() {
                terms.push((p + 1, b));
            }
        }
        let d = &self.diagonal[j];
        let rhs = &slack * d.abs() - weight(self.grid[j].value()) * d;
        self.constraints.push(Constraint { terms, cmp: Cmp::Ge, rhs, kind });
    }

    fn push_moment(&mut self, j: usize) {
        let slack = self.margin.clone();
        self.push_scaled(j, |x| x.clone(), slack, ConstraintKind::Moment(j));
    }

    /// Validity of row `j` at `λ`, with the relative margin.
    pub fn push_lambda(&mut self, j: usize, lambda: &Rational) {
        let slack = &self.margin * omega(lambda);
        let one_plus = int(1) + lambda;
        self.push_scaled(
            j,
            |x| x * &one_plus / (x + lambda),
            slack,
            ConstraintKind::Lambda { row: j, lambda: lambda.clone() },
        );
    }

    /// The move `g` described by variable values `vals`.
    pub fn assemble<T, F: Fn(&T) -> Rational>(&self, vals: &[T], conv: F) -> Move2D {
        let mut g = Move2D::new();
        for (k, d) in self.diagonal.iter().enumerate() {
            g.add_at(self.grid[k].clone(), self.grid[k].clone(), d);
        }
        for e in &self.entries {
            let v = conv(&vals[e.pos]) - conv(&vals[e.pos + 1]);
            g.add_at(self.grid[e.i].clone(), self.grid[e.j].clone(), &v);
        }
        g
    }

    /// Largest violation of any constraint by exact values, for cross-checks.
    pub fn max_violation(&self, vals: &[Rational]) -> Rational {
        let mut worst = Rational::zero();
        for c in &self.constraints {
            let lhs = c.terms.iter().fold(Rational::zero(), |a, (k, w)| a + w * &vals[*k]);
            let v = match c.cmp {
                Cmp::Eq => (&lhs - &c.rhs).abs(),
                Cmp::Le => &lhs - &c.rhs,
                Cmp::Ge => &c.rhs - &lhs,
            };
            if v > worst {
                worst = v;
            }
        }
        worst
    }
}
