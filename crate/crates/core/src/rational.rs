//! Exact rationals and the small conversions the rest of the crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational string")]
    Empty,
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("negative denominator in `{0}`")]
    NegativeDenominator(String),
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, RationalParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::Malformed(whole.to_string()))
}

/// Strict form used by game documents: an integer or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t, s)?)),
        Some((p, q)) => {
            let num = parse_int(p.trim(), s)?;
            let den = parse_int(q.trim(), s)?;
            if den.is_zero() {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            if den.is_negative() {
                return Err(RationalParseError::NegativeDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Lenient form for command-line flags: also accepts exact decimals such as
/// `0.6` or `1e-6`, converted without rounding.
pub fn parse_rational_lenient(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    if t.contains('/') || !(t.contains('.') || t.contains(['e', 'E'])) {
        return parse_rational(t);
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| RationalParseError::Malformed(s.to_string()))?;
            (m, e)
        }
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(s.to_string()));
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    let joined = format!("{int_digits}{frac_part}");
    if joined.is_empty() || !joined.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Malformed(s.to_string()));
    }
    let mut value = Rational::from_integer(joined.parse::<BigInt>().unwrap());
    let shift = exp - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    value *= pow_i(&ten, shift);
    if negative {
        value = -value;
    }
    Ok(value)
}

/// `base^e` for a signed exponent; `base` must be nonzero when `e < 0`.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact value of a finite double.
pub fn from_f64_exact(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Nearest multiple of `1/den` to `v`, ties away from zero.
pub fn round_to_denominator(v: f64, den: &BigInt) -> Option<Rational> {
    let exact = Rational::from_float(v)?;
    let scaled = exact * Rational::from_integer(den.clone());
    Some(Rational::new(scaled.round().to_integer(), den.clone()))
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn best_approximation(v: f64, max_den: u64) -> Option<Rational> {
    let exact = Rational::from_float(v)?;
    let max_den = BigInt::from(max_den.max(1));
    let negative = exact.is_negative();
    let mut x = exact.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    loop {
        let a = x.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            // Semiconvergent (p0 + k p1)/(q0 + k q1) with the largest admissible k.
            let k = (&max_den - &q0).div_floor(&q1);
            let cand = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let last = Rational::new(p1.clone(), q1.clone());
            let target = exact.abs();
            let best = if (&cand - &target).abs() < (&last - &target).abs() { cand } else { last };
            return Some(if negative { -best } else { best });
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &x - Rational::from_integer(a);
        if frac.is_zero() {
            let best = Rational::new(p1, q1);
            return Some(if negative { -best } else { best });
        }
        x = frac.recip();
    }
}

/// Exact `d < 1.5 δ + sqrt(3δ + 2.25 δ²)`, the comparison against `A(δ)`.
pub fn lt_a_of(d: &Rational, delta: &Rational) -> bool {
    let lin = rat(3, 2) * delta;
    let shifted = d - &lin;
    if shifted.is_negative() {
        return true;
    }
    let rad = int(3) * delta + rat(9, 4) * delta * delta;
    &shifted * &shifted < rad
}

/// Exact `d < 5·A(7u)`, the comparison against the isolating radius.
pub fn lt_isolating(d: &Rational, u: &Rational) -> bool {
    lt_a_of(&(d / int(5)), &(int(7) * u))
}
