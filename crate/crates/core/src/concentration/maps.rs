//! The disc-to-half-plane maps used to transport a concentration estimate.
//!
//! `G` sends the closed unit disc onto the closed upper half-plane, `F` is a
//! square-root map of the half-plane into itself, and `H = G⁻¹∘F∘G` folds two
//! arcs of the unit circle onto the real segments `±[δ, 1]`.

use num_complex::Complex64;

use super::ConcentrationError;

/// Slack allowed when testing membership of a closed domain.
pub const DOMAIN_TOLERANCE: f64 = 1e-12;

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sphere {
    Finite(Complex64),
    Infinity,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn g_sphere(z: Sphere) -> Sphere {
    match z {
        Sphere::Infinity => Sphere::Finite(-I),
        Sphere::Finite(z) if z == Complex64::new(1.0, 0.0) => Sphere::Infinity,
        Sphere::Finite(z) => Sphere::Finite(I * (1.0 + z) / (1.0 - z)),
    }
}

fn g_inv_sphere(w: Sphere) -> Sphere {
    match w {
        Sphere::Infinity => Sphere::Finite(Complex64::new(1.0, 0.0)),
        Sphere::Finite(w) if w == -I => Sphere::Infinity,
        Sphere::Finite(w) => Sphere::Finite((w - I) / (w + I)),
    }
}

/// `K = |G(δ)|² = ((1+δ)/(1−δ))²`.
pub fn k_of_delta(delta: f64) -> f64 {
    let r = (1.0 + delta) / (1.0 - delta);
    r * r
}

fn check_delta(delta: f64) -> Result<(), ConcentrationError> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(ConcentrationError::Range("delta", delta))
    }
}

fn f_sphere(w: Sphere, k: f64) -> Sphere {
    let w = match w {
        Sphere::Infinity => return Sphere::Finite(Complex64::new(0.0, k.sqrt())),
        Sphere::Finite(w) => w,
    };
    let w2 = w * w;
    let den = k - w2;
    if den == Complex64::new(0.0, 0.0) {
        return Sphere::Infinity;
    }
    let rad = (w2 * k - 1.0) / den;
    let mut root = rad.sqrt();
    if rad.im == 0.0 && rad.re >= 0.0 {
        // On the real axis the branch follows the sign of w.
        root = Complex64::new(root.re.abs() * w.re.signum(), 0.0);
    } else if root.im < 0.0 {
        root = -root;
    }
    Sphere::Finite(root)
}

/// `G(z) = i(1+z)/(1−z)` on the closed disc; `z = 1` maps to `∞` and is rejected here.
pub fn map_g(z: Complex64) -> Result<Complex64, ConcentrationError> {
    if z.norm() > 1.0 + DOMAIN_TOLERANCE {
        return Err(ConcentrationError::Domain { re: z.re, im: z.im });
    }
    match g_sphere(Sphere::Finite(z)) {
        Sphere::Finite(w) => Ok(w),
        Sphere::Infinity => Err(ConcentrationError::Domain { re: z.re, im: z.im }),
    }
}

/// `G⁻¹(w) = (w − i)/(w + i)` on the closed upper half-plane.
pub fn map_g_inv(w: Complex64) -> Result<Complex64, ConcentrationError> {
    if w.im < -DOMAIN_TOLERANCE {
        return Err(ConcentrationError::Domain { re: w.re, im: w.im });
    }
    match g_inv_sphere(Sphere::Finite(w)) {
        Sphere::Finite(z) => Ok(z),
        Sphere::Infinity => Err(ConcentrationError::Domain { re: w.re, im: w.im }),
    }
}

/// `F(w) = sqrt((w²K − 1)/(K − w²))`, branch with nonnegative imaginary part.
pub fn map_f(w: Complex64, delta: f64) -> Result<Complex64, ConcentrationError> {
    check_delta(delta)?;
    if w.im < -DOMAIN_TOLERANCE {
        return Err(ConcentrationError::Domain { re: w.re, im: w.im });
    }
    match f_sphere(Sphere::Finite(w), k_of_delta(delta)) {
        Sphere::Finite(v) => Ok(v),
        Sphere::Infinity => Err(ConcentrationError::Domain { re: w.re, im: w.im }),
    }
}

/// `H = G⁻¹∘F∘G` on the closed disc, passing through `∞` where needed.
pub fn map_h(z: Complex64, delta: f64) -> Result<Complex64, ConcentrationError> {
    check_delta(delta)?;
    if z.norm() > 1.0 + DOMAIN_TOLERANCE {
        return Err(ConcentrationError::Domain { re: z.re, im: z.im });
    }
    let k = k_of_delta(delta);
    match g_inv_sphere(f_sphere(g_sphere(Sphere::Finite(z)), k)) {
        Sphere::Finite(v) => Ok(v),
        Sphere::Infinity => Err(ConcentrationError::Domain { re: z.re, im: z.im }),
    }
}
