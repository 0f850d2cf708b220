//! Exact validity of one- and two-dimensional moves.
//!
//! A 1D move `ℓ` is valid when `Σℓ = 0`, `Σ x/(x+λ)·ℓ(x) ≥ 0` for every
//! `λ > 0`, and `Σ x·ℓ(x) ≥ 0`. The middle condition is decided by clearing
//! the positive denominators and running the Sturm engine on the numerator.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::game::{Tdpg, Tipg};
use crate::moves::{Coordinate, Move1D, Move2D};
use crate::poly::{nonneg_on_nonneg_axis, PolynomialR};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    InvalidSum,
    InvalidMoment,
    InvalidLambda,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Valid => "Valid",
            Verdict::InvalidSum => "InvalidSum",
            Verdict::InvalidMoment => "InvalidMoment",
            Verdict::InvalidLambda => "InvalidLambda",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub verdict: Verdict,
    /// For `InvalidLambda`: a rational `λ* > 0` at which the constraint is negative.
    pub witness: Option<Rational>,
    pub detail: String,
    /// Each condition's outcome, evaluated independently of the others.
    pub sum_ok: bool,
    pub lambda_ok: bool,
    pub moment_ok: bool,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

/// `Σ x/(x+λ)·ℓ(x)` at a single `λ > 0`.
pub fn lambda_constraint(l: &Move1D, lambda: &Rational) -> Rational {
    l.iter()
        .filter(|(x, _)| !x.is_zero())
        .fold(Rational::zero(), |acc, (x, v)| {
            acc + x.value() * v / (x.value() + lambda)
        })
}

/// Float evaluation of the same sum, used by the sampling oracles.
pub fn lambda_constraint_f64(l: &Move1D, lambda: f64) -> f64 {
    l.iter()
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, v)| {
            let x = crate::rational::to_f64(x.value());
            x * crate::rational::to_f64(v) / (x + lambda)
        })
        .sum()
}

/// `N(λ) = Σᵢ ℓ(xᵢ)·xᵢ·∏_{j≠i}(xⱼ+λ)` over the strictly positive support.
pub fn validity_numerator(l: &Move1D) -> PolynomialR {
    let pts: Vec<(&Coordinate, &Rational)> = l.iter().filter(|(x, _)| !x.is_zero()).collect();
    let k = pts.len();
    let factor = |i: usize| PolynomialR::linear(pts[i].0.value().clone(), int(1));
    // prefix[i] = ∏_{j<i}, suffix[i] = ∏_{j≥i}
    let mut prefix = vec![PolynomialR::one(); k + 1];
    for i in 0..k {
        prefix[i + 1] = &prefix[i] * &factor(i);
    }
    let mut suffix = vec![PolynomialR::one(); k + 1];
    for i in (0..k).rev() {
        suffix[i] = &suffix[i + 1] * &factor(i);
    }
    (0..k).fold(PolynomialR::zero(), |acc, i| {
        let (x, v) = pts[i];
        let others = &prefix[i] * &suffix[i + 1];
        &acc + &others.scale(&(x.value() * v))
    })
}

pub fn check_valid_1d(l: &Move1D) -> ValidityReport {
    let total = l.total();
    let sum_ok = total.is_zero();
    let check = nonneg_on_nonneg_axis(&validity_numerator(l));
    let lambda_ok = check.holds;
    let moment = l.moment();
    let moment_ok = !moment.is_negative();

    let (verdict, witness, detail) = if !sum_ok {
        (Verdict::InvalidSum, None, format!("sum is {total}, expected 0"))
    } else if !lambda_ok {
        let w = check.witness.expect("failed check carries a witness");
        let value = lambda_constraint(l, &w);
        let detail = format!("constraint at lambda = {w} is {value}");
        (Verdict::InvalidLambda, Some(w), detail)
    } else if !moment_ok {
        (Verdict::InvalidMoment, None, format!("first moment is {moment}"))
    } else {
        (Verdict::Valid, None, String::from("valid"))
    };
    ValidityReport { verdict, witness, detail, sum_ok, lambda_ok, moment_ok }
}

/// Per-row outcome of a 2D check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveValidity {
    pub valid: bool,
    /// Rows in increasing coordinate order.
    pub rows: Vec<(Coordinate, ValidityReport)>,
}

impl MoveValidity {
    pub fn first_failure(&self) -> Option<&(Coordinate, ValidityReport)> {
        self.rows.iter().find(|(_, r)| !r.is_valid())
    }
}

/// Every row `x ↦ q(x, y)` must be valid.
pub fn check_horizontally_valid(q: &Move2D) -> MoveValidity {
    let rows: Vec<(Coordinate, ValidityReport)> = q
        .rows()
        .into_iter()
        .map(|(y, row)| (y, check_valid_1d(&row)))
        .collect();
    let valid = rows.iter().all(|(_, r)| r.is_valid());
    MoveValidity { valid, rows }
}

/// Every column `y ↦ q(x, y)` must be valid; reported rows are the columns `x`.
pub fn check_vertically_valid(q: &Move2D) -> MoveValidity {
    check_horizontally_valid(&q.transpose())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TipgValidity {
    pub valid: bool,
    pub first: MoveValidity,
    pub second: MoveValidity,
}

pub fn check_valid_tipg(r: &Tipg) -> TipgValidity {
    let first = check_horizontally_valid(&r.first);
    let second = check_vertically_valid(&r.second);
    TipgValidity { valid: first.valid && second.valid, first, second }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdpgValidity {
    pub valid: bool,
    pub configurations_ok: bool,
    /// For each move, in order: horizontal for odd (1-based), vertical for even.
    pub moves: Vec<MoveValidity>,
    pub detail: String,
}

/// Configurations stay nonnegative and moves alternate horizontal/vertical validity.
pub fn check_valid_tdpg(m: &Tdpg) -> TdpgValidity {
    let (configurations_ok, detail) = match m.configurations() {
        Ok(_) => (true, String::from("configurations nonnegative")),
        Err(e) => (false, e.to_string()),
    };
    let moves: Vec<MoveValidity> = m
        .moves
        .iter()
        .enumerate()
        .map(|(i, mv)| {
            if i % 2 == 0 {
                check_horizontally_valid(mv)
            } else {
                check_vertically_valid(mv)
            }
        })
        .collect();
    let valid = configurations_ok && moves.iter().all(|v| v.valid);
    TdpgValidity { valid, configurations_ok, moves, detail }
}
