//! Overflow-safe evaluation: complex numbers stored as `(log₂|w|, arg w)`.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::ConcentrationError;
use crate::moves::Move2D;
use crate::rational::{int, to_f64, Rational};

/// A complex number in polar log form; zero has `log2_abs = -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub log2_abs: f64,
    pub arg: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex { log2_abs: f64::NEG_INFINITY, arg: 0.0 };
    pub const ONE: LogComplex = LogComplex { log2_abs: 0.0, arg: 0.0 };

    pub fn from_complex(w: Complex64) -> Self {
        if w.is_zero() {
            return Self::ZERO;
        }
        let (r, a) = w.to_polar();
        if r.is_finite() && r > 0.0 {
            LogComplex { log2_abs: r.log2(), arg: a }
        } else {
            // Rescale to avoid overflow in the modulus itself.
            let s = w.re.abs().max(w.im.abs());
            let u = w / s;
            LogComplex { log2_abs: s.log2() + u.norm().log2(), arg: u.arg() }
        }
    }

    pub fn to_complex(self) -> Complex64 {
        if self.log2_abs == f64::NEG_INFINITY {
            return Complex64::zero();
        }
        Complex64::from_polar(self.log2_abs.exp2(), self.arg)
    }

    pub fn is_zero(self) -> bool {
        self.log2_abs == f64::NEG_INFINITY
    }

    pub fn mul(self, o: LogComplex) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        LogComplex { log2_abs: self.log2_abs + o.log2_abs, arg: self.arg + o.arg }
    }

    pub fn powi(self, n: i32) -> Self {
        if self.is_zero() {
            return if n == 0 { Self::ONE } else { Self::ZERO };
        }
        LogComplex { log2_abs: self.log2_abs * n as f64, arg: self.arg * n as f64 }
    }

    pub fn log10_abs(self) -> f64 {
        self.log2_abs * std::f64::consts::LOG10_2
    }

    /// `Σ wᵢ`, factoring out the largest modulus first.
    pub fn sum(terms: &[LogComplex]) -> Self {
        let top = terms
            .iter()
            .map(|t| t.log2_abs)
            .fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let acc: Complex64 = terms
            .iter()
            .filter(|t| !t.is_zero())
            .map(|t| Complex64::from_polar((t.log2_abs - top).exp2(), t.arg))
            .sum();
        let mut out = Self::from_complex(acc);
        if !out.is_zero() {
            out.log2_abs += top;
        }
        out
    }
}

/// Relative distance below which a point counts as sitting on a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

fn diag_factor(x: f64, z: Complex64) -> Result<LogComplex, ConcentrationError> {
    if x == 0.0 {
        return Ok(LogComplex::ZERO);
    }
    let den = z + (x - 2.0);
    if den.norm() <= POLE_TOLERANCE * (1.0 + z.norm()) {
        return Err(ConcentrationError::PoleHit { re: z.re, im: z.im });
    }
    let num = LogComplex::from_complex((z - 1.0) * x);
    if num.is_zero() {
        return Ok(LogComplex::ZERO);
    }
    let den = LogComplex::from_complex(den);
    Ok(LogComplex { log2_abs: num.log2_abs - den.log2_abs, arg: num.arg - den.arg })
}

/// `D(z) = Σ g(x,y)·φ_x(z)·φ_y(z)` with `φ_x(z) = (xz − x)/(x + z − 2)`, in log form.
pub fn diag_rational_log(g: &Move2D, z: Complex64) -> Result<LogComplex, ConcentrationError> {
    let mut terms = Vec::with_capacity(g.len());
    for ((x, y), v) in g.iter() {
        let fx = diag_factor(to_f64(x.value()), z)?;
        let fy = diag_factor(to_f64(y.value()), z)?;
        let c = LogComplex::from_complex(Complex64::new(to_f64(v), 0.0));
        terms.push(c.mul(fx).mul(fy));
    }
    Ok(LogComplex::sum(&terms))
}

pub fn diag_rational(g: &Move2D, z: Complex64) -> Result<Complex64, ConcentrationError> {
    diag_rational_log(g, z).map(LogComplex::to_complex)
}

/// `h(z) = [4(z−1)(z+1)/((z−2)(z+2))]^100`, evaluated in log form.
pub fn example_h(z: Complex64) -> Result<LogComplex, ConcentrationError> {
    let z2 = z * z;
    let den = z2 - 4.0;
    if (z - 2.0).norm() <= POLE_TOLERANCE || (z + 2.0).norm() <= POLE_TOLERANCE {
        return Err(ConcentrationError::PoleHit { re: z.re, im: z.im });
    }
    let base = LogComplex::from_complex((z2 - 1.0) * 4.0);
    let den = LogComplex::from_complex(den);
    if base.is_zero() {
        return Ok(LogComplex::ZERO);
    }
    let ratio = LogComplex { log2_abs: base.log2_abs - den.log2_abs, arg: base.arg - den.arg };
    Ok(ratio.powi(100))
}

/// Exact `h(x)` at a real rational point.
pub fn example_h_rational(x: &Rational) -> Result<Rational, ConcentrationError> {
    let x2 = x * x;
    let den = &x2 - int(4);
    if den.is_zero() {
        return Err(ConcentrationError::PoleHit { re: to_f64(x), im: 0.0 });
    }
    let base = int(4) * (&x2 - int(1)) / den;
    Ok(num_traits::pow(base, 100))
}

/// `|h|` at real points sits below `bound` wherever `|x| ≥ cut`: exact check
/// at the rational grid `x = k/n`.
pub fn example_h_envelope(cut: &Rational, bound: &Rational, n: i64) -> bool {
    (-n..=n).all(|k| {
        let x = Rational::new(k.into(), n.into());
        if x.abs() < *cut {
            return true;
        }
        example_h_rational(&x).map(|v| v.abs() <= *bound).unwrap_or(false)
    })
}
