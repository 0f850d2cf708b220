//! Profile functions of moves, target moves and checkable facts about
//! solutions `g` with `g + g⊤ = t_τ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::moves::{Coordinate, Move1D, Move2D};
use crate::poly::{nonneg_on_nonneg_axis, PolynomialR};
use crate::rational::{best_approximation, int, parse_rational_lenient, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("tau must lie in (0, 1], got {0}")]
    TauOutOfRange(Rational),
    #[error("epsilon must lie in (0, 1/2), got {0}")]
    EpsilonOutOfRange(Rational),
    #[error("profile argument must be at least 1, got {0}")]
    BelowOne(Rational),
    #[error("malformed profile argument `{0}`")]
    Malformed(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Argument of a profile: a rational in `[1, ∞)` or `∞` itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedBound {
    Finite(Rational),
    Infinity,
}

impl ExtendedBound {
    pub fn finite(v: Rational) -> Result<Self, ProfileError> {
        if v < int(1) {
            Err(ProfileError::BelowOne(v))
        } else {
            Ok(ExtendedBound::Finite(v))
        }
    }

    pub fn from_int(n: u32) -> Self {
        assert!(n >= 1, "profile arguments start at 1");
        ExtendedBound::Finite(int(n as i64))
    }

    pub fn at_least_two(&self) -> bool {
        match self {
            ExtendedBound::Finite(v) => v >= &int(2),
            ExtendedBound::Infinity => true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedBound::Finite(v) => crate::rational::to_f64(v),
            ExtendedBound::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtendedBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedBound::Finite(v) => write!(f, "{v}"),
            ExtendedBound::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedBound {
    type Err = ProfileError;
    fn from_str(s: &str) -> Result<Self, ProfileError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(ExtendedBound::Infinity);
        }
        let v = parse_rational_lenient(t).map_err(|_| ProfileError::Malformed(s.to_string()))?;
        ExtendedBound::finite(v)
    }
}

/// `P_x(α)`.
pub fn point_profile(x: &Coordinate, alpha: &ExtendedBound) -> Rational {
    let two = int(2);
    match alpha {
        ExtendedBound::Finite(a) if a < &two => Rational::one(),
        _ if x.is_zero() => Rational::zero(),
        ExtendedBound::Finite(a) => {
            let x = x.value();
            x * (a - int(1)) / (x + a - two)
        }
        ExtendedBound::Infinity => x.value().clone(),
    }
}

pub fn profile_1d(l: &Move1D, alpha: &ExtendedBound) -> Rational {
    l.iter()
        .fold(Rational::zero(), |acc, (x, v)| acc + v * point_profile(x, alpha))
}

/// `q̂(α, β) = Σ q(x,y)·P_x(α)·P_y(β)`.
pub fn profile_2d(q: &Move2D, alpha: &ExtendedBound, beta: &ExtendedBound) -> Rational {
    q.iter().fold(Rational::zero(), |acc, ((x, y), v)| {
        acc + v * point_profile(x, alpha) * point_profile(y, beta)
    })
}

fn check_tau(tau: &Rational) -> Result<(), ProfileError> {
    if tau.is_positive() && tau <= &int(1) {
        Ok(())
    } else {
        Err(ProfileError::TauOutOfRange(tau.clone()))
    }
}

/// `2⟦1,1⟧ − ⟦2−τ,0⟧ − ⟦0,2−τ⟧`.
pub fn target_move(tau: &Rational) -> Result<Move2D, ProfileError> {
    check_tau(tau)?;
    let s = Coordinate::new(int(2) - tau).expect("2 - tau is positive");
    let one = Coordinate::from_int(1);
    let mut t = Move2D::point(one.clone(), one, int(2));
    t.add_at(s.clone(), Coordinate::zero(), &int(-1));
    t.add_at(Coordinate::zero(), s, &int(-1));
    Ok(t)
}

/// Four-branch closed form of the target's profile.
pub fn target_profile_closed_form(
    tau: &Rational,
    alpha: &ExtendedBound,
    beta: &ExtendedBound,
) -> Result<Rational, ProfileError> {
    check_tau(tau)?;
    let s = Coordinate::new(int(2) - tau).expect("2 - tau is positive");
    Ok(match (alpha.at_least_two(), beta.at_least_two()) {
        (true, true) => int(2),
        (true, false) => int(2) - point_profile(&s, alpha),
        (false, true) => int(2) - point_profile(&s, beta),
        (false, false) => Rational::zero(),
    })
}

/// `τ = 4ε/(1 + 2ε)`.
pub fn epsilon_to_tau(eps: &Rational) -> Result<Rational, ProfileError> {
    if !eps.is_positive() || eps >= &rat(1, 2) {
        return Err(ProfileError::EpsilonOutOfRange(eps.clone()));
    }
    Ok(int(4) * eps / (int(1) + int(2) * eps))
}

/// `ε = τ/(4 − 2τ)`, accepting `τ ∈ (0, 1)`.
pub fn tau_to_epsilon(tau: &Rational) -> Result<Rational, ProfileError> {
    if !tau.is_positive() || tau >= &int(1) {
        return Err(ProfileError::TauOutOfRange(tau.clone()));
    }
    Ok(tau / (int(4) - int(2) * tau))
}

/// `⟦½+ε, ½+ε⟧ − ½⟦1,0⟧ − ½⟦0,1⟧`.
pub fn v_epsilon(eps: &Rational) -> Result<Move2D, ProfileError> {
    if !eps.is_positive() || eps >= &rat(1, 2) {
        return Err(ProfileError::EpsilonOutOfRange(eps.clone()));
    }
    let c = Coordinate::new(rat(1, 2) + eps).expect("positive");
    let one = Coordinate::from_int(1);
    let mut v = Move2D::point(c.clone(), c, int(1));
    v.add_at(one.clone(), Coordinate::zero(), &rat(-1, 2));
    v.add_at(Coordinate::zero(), one, &rat(-1, 2));
    Ok(v)
}

/// `g_b`: the part of `g` on the horizontal line `y = b`.
pub fn row_restriction(g: &Move2D, b: &Coordinate) -> Move2D {
    g.restrict_to_row(b)
}

/// Exact profile values at a list of argument pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProfileTable {
    pub rows: Vec<(ExtendedBound, ExtendedBound, Rational)>,
}

impl ProfileTable {
    pub fn evaluate(q: &Move2D, points: &[(ExtendedBound, ExtendedBound)]) -> Self {
        let rows = points
            .par_iter()
            .map(|(a, b)| (a.clone(), b.clone(), profile_2d(q, a, b)))
            .collect();
        ProfileTable { rows }
    }

    pub fn grid(q: &Move2D, alphas: &[ExtendedBound], betas: &[ExtendedBound]) -> Self {
        let points: Vec<_> = alphas
            .iter()
            .flat_map(|a| betas.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        Self::evaluate(q, &points)
    }
}

/// `n` geometric points on `[1, hi]` snapped to denominators ≤ 64, plus `∞`.
pub fn geometric_arguments(n: usize, hi: f64) -> Vec<ExtendedBound> {
    let mut out: BTreeSet<ExtendedBound> = BTreeSet::new();
    for k in 0..n {
        let t = if n > 1 { k as f64 / (n - 1) as f64 } else { 0.0 };
        let v = hi.powf(t);
        let r = best_approximation(v, 64).expect("finite");
        out.insert(ExtendedBound::Finite(r.max(int(1))));
    }
    out.insert(ExtendedBound::Infinity);
    out.into_iter().collect()
}

/// Default argument set for fact checks: geometric on `[1, 10³]` together
/// with `3/2`, `2` and `∞`.
pub fn default_fact_arguments() -> Vec<ExtendedBound> {
    let mut v = geometric_arguments(16, 1000.0);
    v.push(ExtendedBound::Finite(rat(3, 2)));
    v.push(ExtendedBound::from_int(2));
    v.sort();
    v.dedup();
    v
}

/// The inequalities and identities checked by [`check_facts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    /// `ĝ(α, α) = 1` for `α ≥ 2`.
    DiagonalIsOne,
    /// `ĝ(α, β) ≤ 2` for `α, β ≥ 2`.
    BoundedByTwo,
    /// `ĝ(α, β) = 0` for `α < 2`.
    ZeroBelowTwo,
    /// `ĝ(α, 1) = 2 − P_{2−τ}(α)` for `α ≥ 2`.
    FirstRow,
    /// `ĝ(α, 2) ≤ 2 − P_{2−τ}(α)` for `α ≥ 2`.
    SecondRowBelowTarget,
    /// `ĝ(α, 2) ≤ 2/α + τ` for `α ≥ 2`.
    SecondRowDecay,
    /// `P_{2−τ}(α) ≥ P_2(α) − τ` for `α ≥ 2`.
    ShiftedProfile,
    /// `ĝ ≥ 0` everywhere.
    Nonnegative,
    /// `ĝ(α, 1) ≥ ĝ(α, 2)`.
    RowMonotone,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Fact::DiagonalIsOne => "diagonal_is_one",
            Fact::BoundedByTwo => "bounded_by_two",
            Fact::ZeroBelowTwo => "zero_below_two",
            Fact::FirstRow => "first_row",
            Fact::SecondRowBelowTarget => "second_row_below_target",
            Fact::SecondRowDecay => "second_row_decay",
            Fact::ShiftedProfile => "shifted_profile",
            Fact::Nonnegative => "nonnegative",
            Fact::RowMonotone => "row_monotone",
        };
        f.write_str(s)
    }
}

/// A sampled point where a fact fails: `lhs` should relate to `rhs` as the fact states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactViolation {
    pub fact: Fact,
    pub alpha: ExtendedBound,
    pub beta: Option<ExtendedBound>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactsReport {
    pub evaluations: usize,
    pub violations: Vec<FactViolation>,
    /// Whole-interval `α ∈ [2, ∞)` verdicts, present when certification was requested.
    pub certified: Vec<(Fact, bool)>,
}

impl FactsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.certified.iter().all(|(_, ok)| *ok)
    }
}

fn record(
    out: &mut FactsReport,
    fact: Fact,
    alpha: &ExtendedBound,
    beta: Option<&ExtendedBound>,
    lhs: Rational,
    rhs: Rational,
    ok: bool,
) {
    out.evaluations += 1;
    if !ok {
        out.violations.push(FactViolation {
            fact,
            alpha: alpha.clone(),
            beta: beta.cloned(),
            lhs,
            rhs,
        });
    }
}

/// Evaluates every fact at the sample points. Pair facts use each `(α, β)`;
/// univariate facts use each distinct coordinate appearing in the samples.
/// With `certify`, the univariate facts are also decided on all of
/// `α ∈ [2, ∞)` by clearing denominators and applying the Sturm engine.
pub fn check_facts(
    g: &Move2D,
    tau: &Rational,
    samples: &[(ExtendedBound, ExtendedBound)],
    certify: bool,
) -> Result<FactsReport, ProfileError> {
    let target = target_move(tau)?;
    if (g + &g.transpose()) != target {
        return Err(ProfileError::PreconditionFailed(String::from(
            "g + transpose(g) differs from the target move",
        )));
    }
    let s = Coordinate::new(int(2) - tau).expect("positive");
    let two = Coordinate::from_int(2);
    let one_b = ExtendedBound::from_int(1);
    let two_b = ExtendedBound::from_int(2);
    let mut out = FactsReport::default();

    for (a, b) in samples {
        let v = profile_2d(g, a, b);
        record(&mut out, Fact::Nonnegative, a, Some(b), v.clone(), Rational::zero(), !v.is_negative());
        if a.at_least_two() && b.at_least_two() {
            record(&mut out, Fact::BoundedByTwo, a, Some(b), v.clone(), int(2), v <= int(2));
        }
        if !a.at_least_two() {
            record(&mut out, Fact::ZeroBelowTwo, a, Some(b), v.clone(), Rational::zero(), v.is_zero());
        }
    }

    let alphas: BTreeSet<ExtendedBound> = samples
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    for a in &alphas {
        let row1 = profile_2d(g, a, &one_b);
        let row2 = profile_2d(g, a, &two_b);
        record(&mut out, Fact::RowMonotone, a, None, row1.clone(), row2.clone(), row1 >= row2);
        if !a.at_least_two() {
            continue;
        }
        let diag = profile_2d(g, a, a);
        record(&mut out, Fact::DiagonalIsOne, a, None, diag.clone(), int(1), diag == int(1));
        let ps = point_profile(&s, a);
        let bound1 = int(2) - &ps;
        record(&mut out, Fact::FirstRow, a, None, row1.clone(), bound1.clone(), row1 == bound1);
        record(&mut out, Fact::SecondRowBelowTarget, a, None, row2.clone(), bound1.clone(), row2 <= bound1);
        let decay = match a {
            ExtendedBound::Finite(x) => int(2) / x + tau,
            ExtendedBound::Infinity => tau.clone(),
        };
        record(&mut out, Fact::SecondRowDecay, a, None, row2.clone(), decay.clone(), row2 <= decay);
        let p2 = point_profile(&two, a) - tau;
        record(&mut out, Fact::ShiftedProfile, a, None, ps.clone(), p2.clone(), ps >= p2);
    }

    if certify {
        out.certified = certify_facts(g, tau);
    }
    Ok(out)
}

/// Profiles along `α = 2 + λ`, written over the common denominator `∏_{x∈S}(x + λ)`.
struct AxisForm {
    points: Vec<Rational>,
}

impl AxisForm {
    fn new(points: BTreeSet<Rational>) -> Self {
        AxisForm { points: points.into_iter().filter(|p| p.is_positive()).collect() }
    }

    fn factor(p: &Rational) -> PolynomialR {
        PolynomialR::linear(p.clone(), int(1))
    }

    fn product_except(&self, skip: Option<usize>) -> PolynomialR {
        self.points
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .fold(PolynomialR::one(), |acc, (_, p)| &acc * &Self::factor(p))
    }

    fn denominator(&self) -> PolynomialR {
        self.product_except(None)
    }

    fn index(&self, x: &Rational) -> usize {
        self.points.iter().position(|p| p == x).expect("point registered")
    }

    /// Numerator of `Σ c_x P_x(2+λ)`, using `P_x(2+λ) = x(1+λ)/(x+λ)`.
    fn line(&self, c: &Move1D) -> PolynomialR {
        let one_plus = PolynomialR::linear(int(1), int(1));
        let inner = c
            .iter()
            .filter(|(x, _)| !x.is_zero())
            .fold(PolynomialR::zero(), |acc, (x, v)| {
                let rest = self.product_except(Some(self.index(x.value())));
                &acc + &rest.scale(&(x.value() * v))
            });
        &one_plus * &inner
    }

    /// Numerator of `ĝ(2+λ, 2+λ)` over the squared denominator.
    fn diagonal(&self, g: &Move2D) -> PolynomialR {
        let one_plus = PolynomialR::linear(int(1), int(1));
        let inner = g
            .iter()
            .filter(|((x, y), _)| !x.is_zero() && !y.is_zero())
            .fold(PolynomialR::zero(), |acc, ((x, y), v)| {
                let rx = self.product_except(Some(self.index(x.value())));
                let ry = self.product_except(Some(self.index(y.value())));
                &acc + &(&rx * &ry).scale(&(x.value() * y.value() * v))
            });
        &(&one_plus * &one_plus) * &inner
    }
}

fn certify_facts(g: &Move2D, tau: &Rational) -> Vec<(Fact, bool)> {
    let s = int(2) - tau;
    let mut pts: BTreeSet<Rational> = g.coordinates().into_iter().map(|c| c.into_value()).collect();
    pts.insert(s.clone());
    pts.insert(int(2));
    let form = AxisForm::new(pts);
    let den = form.denominator();

    // Column sums weighted by P_y(1) = 1 and P_y(2) = [y > 0].
    let mut c1 = Move1D::new();
    let mut c2 = Move1D::new();
    for ((x, y), v) in g.iter() {
        c1.add_at(x.clone(), v);
        if !y.is_zero() {
            c2.add_at(x.clone(), v);
        }
    }
    let ps = form.line(&Move1D::point(Coordinate::new(s).expect("positive"), int(1)));
    let p2 = form.line(&Move1D::point(Coordinate::from_int(2), int(1)));
    let row1 = form.line(&c1);
    let row2 = form.line(&c2);
    let two_den = den.scale(&int(2));
    let two_over_alpha = form.product_except(Some(form.index(&int(2)))).scale(&int(2));
    let tau_den = den.scale(tau);

    let nonneg = |p: &PolynomialR| nonneg_on_nonneg_axis(p).holds;
    let rows_sum_zero = g.rows().values().all(|r| r.total().is_zero());
    vec![
        (Fact::DiagonalIsOne, (&form.diagonal(g) - &(&den * &den)).is_zero()),
        (Fact::ZeroBelowTwo, rows_sum_zero),
        (Fact::FirstRow, (&(&row1 + &ps) - &two_den).is_zero()),
        (Fact::SecondRowBelowTarget, nonneg(&(&(&two_den - &ps) - &row2))),
        (Fact::SecondRowDecay, nonneg(&(&(&two_over_alpha + &tau_den) - &row2))),
        (Fact::ShiftedProfile, nonneg(&(&(&ps - &p2) + &tau_den))),
        (Fact::RowMonotone, nonneg(&(&row1 - &row2))),
    ]
}

/// All pairs drawn from a list of arguments.
pub fn argument_pairs(args: &[ExtendedBound]) -> Vec<(ExtendedBound, ExtendedBound)> {
    args.iter()
        .flat_map(|a| args.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}
