//! Floating LP, rational rounding, exact repair and verification, cuts.

use std::fmt;
use std::io::Write;

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, Solution, Variable};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::grid::{build_grid, GridSpec};
use super::instance::{Cmp, Constraint, LpInstance};
use super::LpError;
use crate::game::Tipg;
use crate::moves::{Coordinate, Move2D};
use crate::profile::target_move;
use crate::rational::{best_approximation, int, rat, round_to_denominator, to_f64, Rational};
use crate::validity::{check_valid_tipg, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisStatus {
    Optimal,
    Infeasible,
    IterationLimit,
}

impl fmt::Display for SynthesisStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SynthesisStatus::Optimal => "Optimal",
            SynthesisStatus::Infeasible => "Infeasible",
            SynthesisStatus::IterationLimit => "IterationLimit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub iteration: usize,
    pub row: Coordinate,
    pub lambda: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisOptions {
    pub lambda_samples: Vec<Rational>,
    pub max_cut_rounds: usize,
    /// Rounding denominators, tried in order on each LP solution.
    pub denominators: Vec<BigInt>,
    /// Relative validity margin `μ`.
    pub margin: Rational,
    pub fixed: Vec<((Coordinate, Coordinate), Rational)>,
}

/// `n` log-spaced samples of `[lo, hi]`, snapped to denominators up to 10⁶.
pub fn default_lambda_samples(n: usize, lo: f64, hi: f64) -> Vec<Rational> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut out: Vec<Rational> = (0..n)
        .map(|k| {
            let t = if n > 1 { k as f64 / (n - 1) as f64 } else { 0.5 };
            let v = (a + (b - a) * t).exp();
            best_approximation(v, 1_000_000).expect("finite")
        })
        .filter(|r| r.is_positive())
        .collect();
    out.dedup();
    out
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            lambda_samples: default_lambda_samples(64, 1e-4, 1e4),
            max_cut_rounds: 50,
            denominators: [16u32, 24, 32, 40].iter().map(|e| BigInt::from(1u8) << *e).collect(),
            margin: rat(1, 1000),
            fixed: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub status: SynthesisStatus,
    /// `(g, gᵀ)` when optimal.
    pub game: Option<Tipg>,
    /// `∥g∥₁`; the game norm `∥r₁∥₁ + ∥r₂∥₁` is twice this. Zero without a game.
    pub one_norm: Rational,
    pub cut_history: Vec<Cut>,
    pub exact_verified: bool,
    /// Final floating objective including the diagonal, if a solve succeeded.
    pub lp_objective: Option<f64>,
    /// Denominator of the accepted rounding.
    pub denominator: Option<BigInt>,
    /// Margin of the accepted LP (the fallback without margin may be used).
    pub margin_used: Rational,
    pub grid_size: usize,
    pub detail: String,
}

impl SynthesisResult {
    pub fn game_norm(&self) -> Rational {
        int(2) * &self.one_norm
    }

    pub fn g(&self) -> Option<&Move2D> {
        self.game.as_ref().map(|r| &r.first)
    }

    fn failed(status: SynthesisStatus, grid_size: usize, margin: Rational, detail: String) -> Self {
        SynthesisResult {
            status,
            game: None,
            one_norm: Rational::zero(),
            cut_history: Vec::new(),
            exact_verified: false,
            lp_objective: None,
            denominator: None,
            margin_used: margin,
            grid_size,
            detail,
        }
    }
}

/// Snapping threshold for floating values before rounding.
pub const SNAP: f64 = 1e-9;

fn expr(c: &Constraint, vars: &[Variable]) -> LinearExpr {
    let mut e = LinearExpr::empty();
    for (k, w) in &c.terms {
        e.add(vars[*k], to_f64(w));
    }
    e
}

fn op(c: Cmp) -> ComparisonOp {
    match c {
        Cmp::Eq => ComparisonOp::Eq,
        Cmp::Le => ComparisonOp::Le,
        Cmp::Ge => ComparisonOp::Ge,
    }
}

fn float_problem(inst: &LpInstance) -> (Problem, Vec<Variable>) {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Variable> = (0..inst.num_vars()).map(|_| p.add_var(1.0, (0.0, f64::INFINITY))).collect();
    for c in &inst.constraints {
        p.add_constraint(expr(c, &vars), op(c.cmp), to_f64(&c.rhs));
    }
    (p, vars)
}

/// Rounds the floating `g` to multiples of `1/den`, then restores
/// `g + gᵀ = t` and zero row sums exactly.
pub fn round_and_repair(inst: &LpInstance, values: &[f64], den: &BigInt) -> Move2D {
    let n = inst.grid.len();
    let t = target_move(&inst.tau).expect("instance tau is valid");
    let mut g = vec![vec![Rational::zero(); n]; n];
    for (k, d) in inst.diagonal.iter().enumerate() {
        g[k][k] = d.clone();
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = inst.entry(i, j);
            let mut v = values[p] - values[p + 1];
            if v.abs() < SNAP {
                v = 0.0;
            }
            let r = round_to_denominator(v, den).unwrap_or_else(Rational::zero);
            g[j][i] = t.get(&inst.grid[j], &inst.grid[i]) - &r;
            g[i][j] = r;
        }
    }
    // g[i][j] is g(grid[i], grid[j]); row y = grid[j] collects g[·][j].
    let row_sum = |g: &Vec<Vec<Rational>>, j: usize| (0..n).fold(Rational::zero(), |a, i| a + &g[i][j]);
    let shift = |g: &mut Vec<Vec<Rational>>, h: usize, y: usize| {
        // Moves the excess of row y onto row h through the pair (h,y)/(y,h).
        let s = row_sum(g, y);
        if !s.is_zero() && h != y {
            g[h][y] -= &s;
            g[y][h] += &s;
        }
    };
    let one = inst.grid.iter().position(|c| c.value() == &int(1)).unwrap_or(n - 1);
    if inst.grid[0].is_zero() && n > 1 {
        // Row 0's excess goes to the row whose entry at x = 0 is most negative,
        // so the limit λ → 0 of that row stays strict.
        let h0 = (1..n).min_by(|&a, &b| g[0][a].cmp(&g[0][b])).expect("n > 1");
        shift(&mut g, h0, 0);
    }
    for y in 0..n {
        if y != one && !(y == 0 && inst.grid[0].is_zero()) {
            shift(&mut g, one, y);
        }
    }
    let mut out = Move2D::new();
    for (i, col) in g.iter().enumerate() {
        for (j, v) in col.iter().enumerate() {
            out.add_at(inst.grid[i].clone(), inst.grid[j].clone(), v);
        }
    }
    out
}

/// Exact acceptance test: `(g, gᵀ)` valid and summing to `t_τ`.
pub fn verify_symmetric(g: &Move2D, tau: &Rational) -> Result<Tipg, Vec<(Coordinate, Verdict, Option<Rational>)>> {
    let r = Tipg::from_symmetric(g.clone());
    let t = target_move(tau).expect("valid tau");
    if r.sum() != t {
        return Err(Vec::new());
    }
    let v = check_valid_tipg(&r);
    if v.valid {
        return Ok(r);
    }
    Err(v
        .first
        .rows
        .iter()
        .filter(|(_, rep)| !rep.is_valid())
        .map(|(y, rep)| (y.clone(), rep.verdict, rep.witness.clone()))
        .collect())
}

/// Solves the synthesis problem for `t_τ` on `grid`.
pub fn synthesize_tipg(tau: &Rational, grid: &[Coordinate], opts: &SynthesisOptions) -> Result<SynthesisResult, LpError> {
    let first = synthesize_with_margin(tau, grid, opts, &opts.margin)?;
    if first.status == SynthesisStatus::Infeasible && !opts.margin.is_zero() {
        let second = synthesize_with_margin(tau, grid, opts, &Rational::zero())?;
        if second.status != SynthesisStatus::Infeasible {
            return Ok(second);
        }
    }
    Ok(first)
}

fn synthesize_with_margin(
    tau: &Rational,
    grid: &[Coordinate],
    opts: &SynthesisOptions,
    margin: &Rational,
) -> Result<SynthesisResult, LpError> {
    let mut inst = LpInstance::new(tau, grid, &opts.lambda_samples, margin, &opts.fixed)?;
    let size = grid.len();
    if let Some(why) = inst.contradiction.clone() {
        return Ok(SynthesisResult::failed(SynthesisStatus::Infeasible, size, margin.clone(), why));
    }
    let (problem, vars) = float_problem(&inst);
    let mut sol: Solution = match problem.solve() {
        Ok(s) => s,
        Err(e) => {
            return Ok(SynthesisResult::failed(SynthesisStatus::Infeasible, size, margin.clone(), e.to_string()));
        }
    };
    let offset = to_f64(&inst.objective_offset());
    let mut history: Vec<Cut> = Vec::new();
    for round in 0..=opts.max_cut_rounds {
        let values: Vec<f64> = vars.iter().map(|v| *sol.var_value(*v)).collect();
        let mut failures = Vec::new();
        for den in &opts.denominators {
            let g = round_and_repair(&inst, &values, den);
            match verify_symmetric(&g, tau) {
                Ok(game) => {
                    return Ok(SynthesisResult {
                        status: SynthesisStatus::Optimal,
                        one_norm: g.one_norm(),
                        game: Some(game),
                        cut_history: history,
                        exact_verified: true,
                        lp_objective: Some(sol.objective() + offset),
                        denominator: Some(den.clone()),
                        margin_used: margin.clone(),
                        grid_size: size,
                        detail: format!("verified after {round} cut rounds"),
                    });
                }
                Err(f) => failures = f,
            }
        }
        if round == opts.max_cut_rounds {
            break;
        }
        let cuts: Vec<(usize, Rational)> = failures
            .into_iter()
            .filter_map(|(y, _, w)| Some((grid.iter().position(|c| *c == y)?, w?)))
            .collect();
        if cuts.is_empty() {
            break;
        }
        for (j, lambda) in cuts {
            history.push(Cut { iteration: round + 1, row: grid[j].clone(), lambda: lambda.clone() });
            inst.push_lambda(j, &lambda);
            let c = inst.constraints.last().expect("just pushed");
            sol = match sol.add_constraint(expr(c, &vars), op(c.cmp), to_f64(&c.rhs)) {
                Ok(s) => s,
                Err(e) => {
                    let mut r = SynthesisResult::failed(SynthesisStatus::Infeasible, size, margin.clone(), e.to_string());
                    r.cut_history = history;
                    return Ok(r);
                }
            };
        }
    }
    let mut r = SynthesisResult::failed(
        SynthesisStatus::IterationLimit,
        size,
        margin.clone(),
        String::from("no rounding verified within the cut budget"),
    );
    r.lp_objective = Some(sol.objective() + offset);
    r.cut_history = history;
    Ok(r)
}

/// Floating optimum of the relaxation (with one pass, no cuts), including the diagonal.
pub fn relaxation_objective(inst: &LpInstance) -> Option<f64> {
    if inst.contradiction.is_some() {
        return None;
    }
    let (p, _) = float_problem(inst);
    p.solve().ok().map(|s| s.objective() + to_f64(&inst.objective_offset()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub tau: Rational,
    pub epsilon: Rational,
    pub status: SynthesisStatus,
    pub one_norm: Rational,
    pub cut_rounds: usize,
    pub grid_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub results: Vec<SynthesisResult>,
    /// Optimal norms never decrease as `τ` decreases.
    pub monotone: bool,
}

/// `ε = τ/(4 − 2τ)`, defined on `(0, 1]`.
fn epsilon_of(tau: &Rational) -> Rational {
    tau / (int(4) - int(2) * tau)
}

/// Runs [`synthesize_tipg`] for every `τ` in parallel; rows keep input order.
pub fn scan_tau(taus: &[Rational], spec: &GridSpec, opts: &SynthesisOptions) -> Result<ScanReport, LpError> {
    let results: Vec<SynthesisResult> = taus
        .par_iter()
        .map(|tau| synthesize_tipg(tau, &build_grid(spec, tau)?, opts))
        .collect::<Result<_, _>>()?;
    let rows: Vec<ScanRow> = taus
        .iter()
        .zip(&results)
        .map(|(tau, r)| ScanRow {
            tau: tau.clone(),
            epsilon: epsilon_of(tau),
            status: r.status,
            one_norm: r.one_norm.clone(),
            cut_rounds: r.cut_history.iter().map(|c| c.iteration).max().unwrap_or(0),
            grid_size: r.grid_size,
        })
        .collect();
    let mut optimal: Vec<&ScanRow> = rows.iter().filter(|r| r.status == SynthesisStatus::Optimal).collect();
    optimal.sort_by(|a, b| b.tau.cmp(&a.tau));
    let monotone = optimal.windows(2).all(|w| w[1].one_norm >= w[0].one_norm);
    Ok(ScanReport { rows, results, monotone })
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tau", "epsilon", "status", "one_norm_num", "one_norm_den", "norm_float", "cut_rounds", "grid_size"])?;
    for r in rows {
        w.write_record([
            r.tau.to_string(),
            r.epsilon.to_string(),
            r.status.to_string(),
            r.one_norm.numer().to_string(),
            r.one_norm.denom().to_string(),
            format!("{}", to_f64(&r.one_norm)),
            r.cut_rounds.to_string(),
            r.grid_size.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> Vec<Coordinate> {
        vec![Coordinate::zero(), Coordinate::from_int(1)]
    }

    #[test]
    fn minimal_game_is_found() {
        let r = synthesize_tipg(&int(1), &two_point(), &SynthesisOptions::default()).unwrap();
        assert_eq!(r.status, SynthesisStatus::Optimal);
        assert!(r.exact_verified);
        assert_eq!(r.one_norm, int(2));
        assert_eq!(r.g().unwrap(), &(Move2D::unit(1, 1) - Move2D::unit(0, 1)));
    }

    #[test]
    fn forced_zero_diagonal_is_infeasible() {
        let grid = two_point();
        let mut opts = SynthesisOptions::default();
        opts.fixed = vec![((grid[1].clone(), grid[1].clone()), int(0))];
        let r = synthesize_tipg(&int(1), &grid, &opts).unwrap();
        assert_eq!(r.status, SynthesisStatus::Infeasible);
        assert!(r.game.is_none());
    }

    #[test]
    fn samples_are_log_spaced() {
        let s = default_lambda_samples(64, 1e-4, 1e4);
        assert_eq!(s.len(), 64);
        assert_eq!(s[0], rat(1, 10_000));
        assert_eq!(s[63], int(10_000));
    }
}
