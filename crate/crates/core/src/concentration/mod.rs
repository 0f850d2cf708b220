//! Concentration estimates for rational functions with real poles.
//!
//! If `|f(0)| = 1` and `|f| ≤ ν` on `[−1, 1] ∖ (−δ, δ)`, then the maximum of
//! `|f|` on the unit circle is at least `ν^{−c}` with `c = (2θ/π)/(1 − 2θ/π)`,
//! `θ` the angle of `(i + δ)/(1 + iδ)`. All magnitudes here are `log₂`.

pub mod circle;
pub mod eval;
pub mod maps;

use std::f64::consts::PI;

pub use num_complex::Complex64;
use thiserror::Error;

pub use circle::{circle_max, circle_samples, mean_value_residual, MeanValue, DEFAULT_COARSE, DEFAULT_REFINE};
pub use eval::{diag_rational, diag_rational_log, example_h, example_h_rational, LogComplex};
pub use maps::{map_f, map_g, map_g_inv, map_h};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConcentrationError {
    #[error("evaluation point ({re}, {im}) sits on a pole")]
    PoleHit { re: f64, im: f64 },
    #[error("point ({re}, {im}) lies outside the closed domain")]
    Domain { re: f64, im: f64 },
    #[error("{0} = {1} is out of range")]
    Range(&'static str, f64),
    #[error("function vanishes at the centre, log-magnitude undefined")]
    ZeroAtCenter,
}

/// `atan2(1 − δ², 2δ)`, the angle of `(i + δ)/(1 + iδ)`.
pub fn theta_of_delta(delta: f64) -> Result<f64, ConcentrationError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(ConcentrationError::Range("delta", delta));
    }
    Ok((1.0 - delta * delta).atan2(2.0 * delta))
}

/// `(i + δ)/(1 + iδ)` computed directly, for cross-checking the angle.
pub fn delta_fraction(delta: f64) -> Complex64 {
    Complex64::new(delta, 1.0) / Complex64::new(1.0, delta)
}

/// `c = (2θ/π)/(1 − 2θ/π)`.
pub fn concentration_exponent(delta: f64) -> Result<f64, ConcentrationError> {
    let w = 2.0 * theta_of_delta(delta)? / PI;
    Ok(w / (1.0 - w))
}

/// Lower bound on `log₂ max_{|z|=1}|f|`: `−(2θ/π)·log₂ν / (1 − 2θ/π)`.
pub fn predicted_concentration_bound(delta: f64, nu: f64) -> Result<f64, ConcentrationError> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(ConcentrationError::Range("nu", nu));
    }
    Ok(-concentration_exponent(delta)? * nu.log2())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateResult {
    pub delta: f64,
    pub nu: f64,
    pub theta: f64,
    pub exponent: f64,
    /// `log₂` of the predicted minimum of the circle maximum.
    pub predicted_lower_bound: f64,
    /// `log₂` of the measured circle maximum, after normalising `|f(0)| = 1`.
    pub measured_circle_max: f64,
    pub satisfied: bool,
}

/// Log-slack tolerated between measured and predicted values.
pub const CERTIFICATE_SLACK: f64 = 1e-6;

/// Measures `ν` on a grid of `[−1,1] ∖ (−δ,δ)` and the maximum on the unit
/// circle for `f` (given as `log₂|f|`), normalised by `|f(0)|`. Returns `None`
/// when the measured `ν` is not below 1, where nothing is predicted.
pub fn certify<F>(f: &F, delta: f64, grid_n: usize) -> Result<Option<CertificateResult>, ConcentrationError>
where
    F: Fn(Complex64) -> Result<f64, ConcentrationError> + Sync,
{
    let theta = theta_of_delta(delta)?;
    let at_zero = f(Complex64::new(0.0, 0.0))?;
    if !at_zero.is_finite() {
        return Err(ConcentrationError::ZeroAtCenter);
    }
    let nu = measure_nu(f, delta, grid_n)? - at_zero;
    if nu >= 0.0 {
        return Ok(None);
    }
    let nu = nu.exp2();
    let (_, m) = circle_max(f, 0.0, 1.0, DEFAULT_COARSE, DEFAULT_REFINE)?;
    let measured = m - at_zero;
    let predicted = predicted_concentration_bound(delta, nu)?;
    Ok(Some(CertificateResult {
        delta,
        nu,
        theta,
        exponent: concentration_exponent(delta)?,
        predicted_lower_bound: predicted,
        measured_circle_max: measured,
        satisfied: measured >= predicted - CERTIFICATE_SLACK,
    }))
}

/// `max log₂|f|` over `grid_n` points of each of `[−1, −δ]` and `[δ, 1]`.
pub fn measure_nu<F>(f: &F, delta: f64, grid_n: usize) -> Result<f64, ConcentrationError>
where
    F: Fn(Complex64) -> Result<f64, ConcentrationError> + Sync,
{
    let n = grid_n.max(2);
    let mut best = f64::NEG_INFINITY;
    for k in 0..n {
        let x = delta + (1.0 - delta) * k as f64 / (n - 1) as f64;
        for s in [x, -x] {
            best = best.max(f(Complex64::new(s, 0.0))?);
        }
    }
    Ok(best)
}

/// `f(z) = lead·∏(z − zᵢ) / ∏(z − pⱼ)` with real poles, possibly raised to a power.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoleRational {
    pub lead: f64,
    pub zeros: Vec<Complex64>,
    pub poles: Vec<f64>,
    pub power: u32,
}

impl RealPoleRational {
    pub fn log2_abs(&self, z: Complex64) -> Result<f64, ConcentrationError> {
        let mut acc = self.lead.abs().log2();
        for p in &self.poles {
            let d = (z - p).norm();
            if d <= eval::POLE_TOLERANCE {
                return Err(ConcentrationError::PoleHit { re: z.re, im: z.im });
            }
            acc -= d.log2();
        }
        for r in &self.zeros {
            acc += (z - r).norm().log2();
        }
        Ok(acc * self.power as f64)
    }

    /// Rescales `lead` so that `|f(0)| = 1`.
    pub fn normalized(mut self) -> Result<Self, ConcentrationError> {
        self.lead = 1.0;
        let at0 = self.log2_abs(Complex64::new(0.0, 0.0))?;
        if !at0.is_finite() {
            return Err(ConcentrationError::ZeroAtCenter);
        }
        self.lead = (-at0 / self.power.max(1) as f64).exp2();
        Ok(self)
    }
}
