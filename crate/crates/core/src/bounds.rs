//! Explicit lower bounds: the expectation lemma, isolating windows, per-game
//! norm certificates and the round-count chain from `ε` to `n`.
//!
//! Constants come from one particular proof and are not claimed optimal.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::concentration::{self, circle_max, diag_rational_log, ConcentrationError};
use crate::moves::Move2D;
use crate::profile::{self, profile_2d, target_move, ExtendedBound, ProfileError};
use crate::rational::{best_approximation, int, lt_a_of, lt_isolating, rat, to_f64, Rational};
use crate::validity::check_horizontally_valid;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("argument must be nonnegative, got {0}")]
    Negative(Rational),
    #[error("invalid random variable: {0}")]
    InvalidRv(String),
    #[error("premise failed: {0}")]
    PremiseFailed(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Concentration(#[from] ConcentrationError),
}

/// Above this window width the chain is declared vacuous.
pub const DELTA_MAX: f64 = 0.9;
/// Ratio of off-window to central diagonal profile mass, `(1/3)/(2/3)`.
pub const NU: f64 = 0.5;
/// Lower bound on the central mass `D(4)`.
pub const CENTRAL_MASS: f64 = 2.0 / 3.0;

pub fn a_of_f64(delta: f64) -> f64 {
    1.5 * delta + (3.0 * delta + 2.25 * delta * delta).sqrt()
}

/// `A(δ) = (3/2)δ + sqrt(3δ + (9/4)δ²)`.
pub fn a_of(delta: &Rational) -> Result<f64, BoundsError> {
    if delta.is_negative() {
        return Err(BoundsError::Negative(delta.clone()));
    }
    Ok(a_of_f64(to_f64(delta)))
}

pub fn isolating_function_f64(u: f64) -> f64 {
    5.0 * a_of_f64(7.0 * u)
}

/// `I(u) = 5·A(7u)`.
pub fn isolating_function(u: &Rational) -> Result<f64, BoundsError> {
    if u.is_negative() {
        return Err(BoundsError::Negative(u.clone()));
    }
    Ok(isolating_function_f64(to_f64(u)))
}

/// Sums fractions over a running common denominator, reducing once at the
/// end; much cheaper than reducing after every addition.
fn sum_unreduced(terms: impl Iterator<Item = (BigInt, BigInt)>) -> Rational {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for (n, d) in terms {
        num = num * &d + n * &den;
        den *= d;
    }
    Rational::new(num, den)
}

/// A finitely supported positive random variable with exact probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RvSpec {
    atoms: Vec<(Rational, Rational)>,
}

impl RvSpec {
    pub fn new(atoms: Vec<(Rational, Rational)>) -> Result<Self, BoundsError> {
        if atoms.is_empty() {
            return Err(BoundsError::InvalidRv(String::from("no atoms")));
        }
        let mut total = Rational::zero();
        for (v, p) in &atoms {
            if !v.is_positive() {
                return Err(BoundsError::InvalidRv(format!("value {v} is not positive")));
            }
            if p.is_negative() || p > &int(1) {
                return Err(BoundsError::InvalidRv(format!("probability {p} outside [0,1]")));
            }
            total += p;
        }
        if total != int(1) {
            return Err(BoundsError::InvalidRv(format!("probabilities sum to {total}")));
        }
        Ok(RvSpec { atoms })
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn expectation(&self) -> Rational {
        sum_unreduced(self.atoms.iter().map(|(v, p)| (v.numer() * p.numer(), v.denom() * p.denom())))
    }

    pub fn inverse_expectation(&self) -> Rational {
        sum_unreduced(self.atoms.iter().map(|(v, p)| (p.numer() * v.denom(), p.denom() * v.numer())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationReport {
    pub mean: Rational,
    pub inverse_mean: Rational,
    /// `ℙ(|X − 1| < A(δ))`, exact.
    pub probability: Rational,
    pub holds: bool,
}

/// Given `E[X] ≤ 1` and `E[1/X] ≤ 1 + δ`, checks `ℙ(|X − 1| < A(δ)) ≥ 2/3`.
pub fn expectation_lemma_check(x: &RvSpec, delta: &Rational) -> Result<ExpectationReport, BoundsError> {
    if !delta.is_positive() {
        return Err(BoundsError::Negative(delta.clone()));
    }
    let mean = x.expectation();
    if mean > int(1) {
        return Err(BoundsError::PremiseFailed(format!("E[X] = {mean} exceeds 1")));
    }
    let inverse_mean = x.inverse_expectation();
    if inverse_mean > int(1) + delta {
        return Err(BoundsError::PremiseFailed(format!(
            "E[1/X] = {inverse_mean} exceeds 1 + {delta}"
        )));
    }
    let probability = x
        .atoms
        .iter()
        .filter(|(v, _)| lt_a_of(&(v - int(1)).abs(), delta))
        .fold(Rational::zero(), |a, (_, p)| a + p);
    let holds = probability >= rat(2, 3);
    Ok(ExpectationReport { mean, inverse_mean, probability, holds })
}

/// Draws a random variable meeting both premises, together with its `δ`.
///
/// Values are log-uniform around 1 with a random spread, rescaled so that
/// `E[X] = 1`; `δ` is then placed between `E[X]E[1/X] − 1` and 1, biased
/// toward the tight end.
pub fn random_premise_rv<R: Rng>(rng: &mut R) -> Option<(RvSpec, Rational)> {
    let k = rng.gen_range(1..=8usize);
    let spread: f64 = 10f64.powf(rng.gen_range(-3.0..0.5));
    let values: Vec<Rational> = (0..k)
        .map(|_| {
            let v = (spread * rng.gen_range(-1.0..1.0f64)).exp().clamp(1e-3, 1e3);
            best_approximation(v, 1000).unwrap().max(rat(1, 1000))
        })
        .collect();
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=100)).collect();
    let wsum: i64 = weights.iter().sum();
    let probs: Vec<Rational> = weights.iter().map(|w| rat(*w, wsum)).collect();
    let mean = sum_unreduced(values.iter().zip(&probs).map(|(v, p)| (v.numer() * p.numer(), v.denom() * p.denom())));
    let scaled: Vec<Rational> = values.iter().map(|v| v / &mean).collect();
    let rv = RvSpec::new(scaled.into_iter().zip(probs).collect()).ok()?;
    let slack = rv.inverse_expectation() - int(1);
    if slack >= int(1) {
        return None;
    }
    let u: f64 = rng.gen_range(0.0..1.0f64).powi(3);
    let t = best_approximation(u, 1000).unwrap().max(rat(1, 1000));
    // Rounded up onto a coarse grid to keep denominators small.
    let grid = int(1_000_000);
    let delta = ((&slack + (int(1) - &slack) * t) * &grid).ceil() / grid;
    if !delta.is_positive() || delta >= int(1) {
        return None;
    }
    Some((rv, delta))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RvSearchReport {
    pub seed: u64,
    pub trials: usize,
    /// Trials that produced a premise-satisfying variable.
    pub checked: usize,
    pub counterexamples: Vec<(RvSpec, Rational)>,
}

/// Parallel search; trial `i` uses its own generator seeded with `seed + i`.
pub fn search_expectation_counterexamples(trials: usize, seed: u64) -> RvSearchReport {
    let results: Vec<Option<(bool, RvSpec, Rational)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let (rv, delta) = random_premise_rv(&mut rng)?;
            let report = expectation_lemma_check(&rv, &delta).ok()?;
            Some((report.holds, rv, delta))
        })
        .collect();
    let checked = results.iter().filter(|r| r.is_some()).count();
    let counterexamples = results
        .into_iter()
        .flatten()
        .filter(|(holds, _, _)| !holds)
        .map(|(_, rv, d)| (rv, d))
        .collect();
    RvSearchReport { seed, trials, checked, counterexamples }
}

fn check_game(g: &Move2D, tau: &Rational) -> Result<(), BoundsError> {
    let t = target_move(tau)?;
    if (g + &g.transpose()) != t {
        return Err(BoundsError::PreconditionFailed(String::from(
            "g + transpose(g) differs from the target move",
        )));
    }
    let v = check_horizontally_valid(g);
    if let Some((row, r)) = v.first_failure() {
        return Err(BoundsError::PreconditionFailed(format!(
            "row {row} is not valid: {}",
            r.detail
        )));
    }
    Ok(())
}

/// `Σ_b ĝ_b(a, a)` over rows with `|b − a| < I(τ)`, compared exactly.
pub fn isolating_mass(g: &Move2D, tau: &Rational, a: &Rational) -> Result<Rational, BoundsError> {
    check_game(g, tau)?;
    Ok(isolating_mass_unchecked(g, tau, a))
}

fn isolating_mass_unchecked(g: &Move2D, tau: &Rational, a: &Rational) -> Rational {
    let arg = ExtendedBound::Finite(a.clone());
    let near = g.filter_rows(|b| lt_isolating(&(b.value() - a).abs(), tau));
    profile_2d(&near, &arg, &arg)
}

/// Rows of `g` within `I(τ)` of the line `y = 4`.
pub fn concentrated_rows(g: &Move2D, tau: &Rational) -> Result<Move2D, BoundsError> {
    check_game(g, tau)?;
    Ok(concentrated_rows_unchecked(g, tau))
}

fn concentrated_rows_unchecked(g: &Move2D, tau: &Rational) -> Move2D {
    let four = int(4);
    g.filter_rows(|b| lt_isolating(&(b.value() - &four).abs(), tau))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormCertificate {
    pub one_norm: Rational,
    pub concentrated_norm: Rational,
    /// `log₂ max_{|z−4|=1} |D(z)|`, `-∞` when `D ≡ 0`.
    pub circle_max_log2: f64,
    pub circle_argmax: f64,
    /// `max |D| / 16`.
    pub implied_lower_bound: f64,
    pub norm_ok: bool,
    /// `D(4)`, exact.
    pub central_value: Rational,
    pub central_ok: bool,
    /// `(a, D(a))` at sampled `a ∈ [3,5]` with `|a − 4| ≥ 2I(τ)`.
    pub off_window: Vec<(Rational, Rational)>,
    pub off_window_ok: bool,
    pub vacuous: bool,
    pub passed: bool,
}

/// Relative slack on `∥g∥₁ ≥ max|D|/16` for the floating circle maximum.
pub const NORM_SLACK: f64 = 1e-9;

/// Per-game certificate `∥g∥₁ ≥ max_{|z−4|=1}|D(z)|/16` plus the window facts it rests on.
pub fn norm_certificate(g: &Move2D, tau: &Rational) -> Result<NormCertificate, BoundsError> {
    if g.is_empty() {
        return Ok(NormCertificate {
            one_norm: Rational::zero(),
            concentrated_norm: Rational::zero(),
            circle_max_log2: f64::NEG_INFINITY,
            circle_argmax: 0.0,
            implied_lower_bound: 0.0,
            norm_ok: true,
            central_value: Rational::zero(),
            central_ok: true,
            off_window: Vec::new(),
            off_window_ok: true,
            vacuous: true,
            passed: true,
        });
    }
    check_game(g, tau)?;
    let bold = concentrated_rows_unchecked(g, tau);
    let f = |z: Complex64| diag_rational_log(&bold, z).map(|w| w.log2_abs);
    let (arg, m) = circle_max(&f, 4.0, 1.0, concentration::DEFAULT_COARSE, concentration::DEFAULT_REFINE)?;
    let one_norm = g.one_norm();
    let implied = (m - 4.0).exp2();
    let norm_ok = m == f64::NEG_INFINITY || to_f64(&one_norm).log2() + 4.0 >= m - NORM_SLACK;

    let four = ExtendedBound::from_int(4);
    let central_value = profile_2d(&bold, &four, &four);
    let central_ok = central_value >= rat(2, 3);

    let off_window: Vec<(Rational, Rational)> = (0..=32)
        .map(|k| int(3) + rat(k, 16))
        .filter(|a| !lt_isolating(&((a - int(4)).abs() / int(2)), tau))
        .map(|a| {
            let e = ExtendedBound::Finite(a.clone());
            let v = profile_2d(&bold, &e, &e);
            (a, v)
        })
        .collect();
    let off_window_ok = off_window
        .iter()
        .all(|(_, v)| !v.is_negative() && v <= &rat(1, 3));
    Ok(NormCertificate {
        concentrated_norm: bold.one_norm(),
        one_norm,
        circle_max_log2: m,
        circle_argmax: arg,
        implied_lower_bound: implied,
        norm_ok,
        central_value,
        central_ok,
        off_window,
        off_window_ok,
        vacuous: false,
        passed: norm_ok && central_ok && off_window_ok,
    })
}

/// Every intermediate quantity of the chain from `ε` to a round count.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTrace {
    pub epsilon: Rational,
    pub tau: Rational,
    /// `A(7τ)`.
    pub a_of_7tau: f64,
    /// `I(τ) = 5·A(7τ)`.
    pub isolating_radius: f64,
    /// Window half-width `2·I(τ)` after recentring `[3,5]` on `[−1,1]`.
    pub delta: f64,
    /// Present only when `δ < δ_max`.
    pub theta: Option<f64>,
    /// `(2θ/π)/(1 − 2θ/π)`.
    pub exponent: Option<f64>,
    /// `log₂` lower bound on `max_{|z−4|=1}|D|`: `c·log₂(1/ν) + log₂(2/3)`.
    pub circle_lower_bound: Option<f64>,
    /// `max(2, 2^circle/16)`. The floor is `∥t_τ∥₁/2`.
    pub norm_lower_bound: f64,
    /// `max(1, norm/2)`.
    pub round_lower_bound: f64,
    /// Smallest integer not below `round_lower_bound`.
    pub rounds_at_least: u64,
    pub vacuous: bool,
}

/// Runs the chain for `ε ∈ (0, 1/2)`.
pub fn explicit_round_lower_bound(eps: &Rational) -> Result<BoundTrace, BoundsError> {
    let tau = profile::epsilon_to_tau(eps)?;
    let tau_f = to_f64(&tau);
    let a = a_of_f64(7.0 * tau_f);
    let radius = 5.0 * a;
    let delta = 2.0 * radius;
    let vacuous = delta >= DELTA_MAX;
    let (theta, exponent, circle) = if vacuous {
        (None, None, None)
    } else {
        let theta = concentration::theta_of_delta(delta)?;
        let w = 2.0 * theta / PI;
        let c = w / (1.0 - w);
        let circle = c * (1.0 / NU).log2() + CENTRAL_MASS.log2();
        (Some(theta), Some(c), Some(circle))
    };
    let norm = circle.map_or(2.0, |l| (l - 4.0).exp2().max(2.0));
    let rounds = (norm / 2.0).max(1.0);
    Ok(BoundTrace {
        epsilon: eps.clone(),
        tau,
        a_of_7tau: a,
        isolating_radius: radius,
        delta,
        theta,
        exponent,
        circle_lower_bound: circle,
        norm_lower_bound: norm,
        round_lower_bound: rounds,
        rounds_at_least: rounds.ceil() as u64,
        vacuous,
    })
}

/// `|(x(4+ζ) − x)/(x + (4+ζ) − 2)|` for `|ζ| = 1`, bounded by 4.
pub fn circle_factor(x: f64, zeta: Complex64) -> f64 {
    let z = zeta + 4.0;
    ((z - 1.0) * x / (z + (x - 2.0))).norm()
}
