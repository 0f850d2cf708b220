//! Sampling on circles: heuristic maximisation and mean-value quadrature.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::ConcentrationError;

/// Default number of equispaced angles before refinement.
pub const DEFAULT_COARSE: usize = 1 << 12;
/// Default golden-section iterations around the best coarse angle.
pub const DEFAULT_REFINE: usize = 60;

/// Point of the circle `|z − center| = radius` at angle `t`.
pub fn circle_point(center: f64, radius: f64, t: f64) -> Complex64 {
    Complex64::new(center, 0.0) + Complex64::from_polar(radius, t)
}

/// Equispaced samples `(angle, log₂|f|)`, in angle order.
pub fn circle_samples<F>(
    f: &F,
    center: f64,
    radius: f64,
    n: usize,
) -> Result<Vec<(f64, f64)>, ConcentrationError>
where
    F: Fn(Complex64) -> Result<f64, ConcentrationError> + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            f(circle_point(center, radius, t)).map(|v| (t, v))
        })
        .collect()
}

/// Approximate `max log₂|f|` on the circle. `f` returns `log₂|f(z)|`.
///
/// The result is attained at the returned angle, so it is a lower bound on the
/// true maximum regardless of how well the refinement converges.
pub fn circle_max<F>(
    f: &F,
    center: f64,
    radius: f64,
    coarse_n: usize,
    refine_iters: usize,
) -> Result<(f64, f64), ConcentrationError>
where
    F: Fn(Complex64) -> Result<f64, ConcentrationError> + Sync,
{
    let n = coarse_n.max(3);
    let samples = circle_samples(f, center, radius, n)?;
    let (mut best_t, mut best) = samples
        .iter()
        .copied()
        .fold((0.0, f64::NEG_INFINITY), |acc, s| if s.1 > acc.1 { s } else { acc });

    let step = TAU / n as f64;
    let (mut a, mut b) = (best_t - step, best_t + step);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let eval = |t: f64| f(circle_point(center, radius, t));
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    for _ in 0..refine_iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = eval(d)?;
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if v > best {
            best = v;
            best_t = t;
        }
    }
    Ok((best_t.rem_euclid(TAU), best))
}

/// Outcome of a trapezoidal mean-value computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValue {
    /// `(1/2π)∮ log₂|f| − log₂|f(center)|`.
    pub residual: f64,
    /// Nodes where `f` vanished and were left out.
    pub skipped: usize,
}

/// `(1/2π)∮ log|f| − log|f(center)|` in bits, by the trapezoid rule on `quadrature_n` nodes.
pub fn mean_value_residual<F>(
    f: &F,
    center: f64,
    radius: f64,
    quadrature_n: usize,
) -> Result<MeanValue, ConcentrationError>
where
    F: Fn(Complex64) -> Result<f64, ConcentrationError> + Sync,
{
    let at_center = f(Complex64::new(center, 0.0))?;
    if !at_center.is_finite() {
        return Err(ConcentrationError::ZeroAtCenter);
    }
    let samples = circle_samples(f, center, radius, quadrature_n)?;
    let finite: Vec<f64> = samples.iter().map(|s| s.1).filter(|v| v.is_finite()).collect();
    let skipped = samples.len() - finite.len();
    if finite.is_empty() {
        return Err(ConcentrationError::ZeroAtCenter);
    }
    let mean = finite.iter().sum::<f64>() / finite.len() as f64;
    Ok(MeanValue { residual: mean - at_center, skipped })
}

/// `log₂|p(z)|` for a polynomial given by its roots and leading coefficient.
pub fn log2_abs_from_roots(lead: f64, roots: &[Complex64], z: Complex64) -> f64 {
    roots
        .iter()
        .fold(lead.abs().log2(), |acc, r| acc + (z - r).norm().log2())
}
