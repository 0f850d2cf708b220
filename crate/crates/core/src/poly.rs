//! Univariate polynomials over ℚ, Sturm sequences and nonnegativity on `[0, ∞)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// Rational polynomial in `λ`, coefficients in ascending degree and trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolynomialR {
    coeffs: Vec<Rational>,
}

impl PolynomialR {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `λ`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![int(0), int(1)])
    }

    /// `a + bλ`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolynomialR { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + crate::rational::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = &r[r.len() - 1] / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm: monic, squarefree, pairwise coprime `a_i` with
    /// `self = c·∏ a_i^i`. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = self.derivative();
        let a0 = Self::gcd(self, &fp);
        let mut b = self.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = Self::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            d = &c - &b.derivative();
        }
        out
    }

    /// Monic product of the factors of odd multiplicity: the roots where the sign changes.
    pub fn odd_multiplicity_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(Self::one(), |acc, (a, _)| &acc * &a)
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        self.exact_div(&Self::gcd(self, &self.derivative())).monic()
    }

    /// `1 + max |a_i / a_n|`, a strict upper bound on every root's modulus.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(n) = self.degree() else {
            return int(1);
        };
        let lc = self.coeffs[n].abs();
        let m = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + int(1)
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        SturmSequence::new(&self.squarefree_part()).count_roots(a, b)
    }
}

impl fmt::Display for PolynomialR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolynomialR {
    type Output = PolynomialR;
    fn add(self, rhs: &PolynomialR) -> PolynomialR {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        PolynomialR::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &PolynomialR {
    type Output = PolynomialR;
    fn neg(self) -> PolynomialR {
        PolynomialR::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &PolynomialR {
    type Output = PolynomialR;
    fn sub(self, rhs: &PolynomialR) -> PolynomialR {
        self + &(-rhs)
    }
}

impl Mul for &PolynomialR {
    type Output = PolynomialR;
    fn mul(self, rhs: &PolynomialR) -> PolynomialR {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialR::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialR::from_coeffs(out)
    }
}

/// Integer polynomial kept primitive; only its sign pattern matters.
#[derive(Debug, Clone)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    /// Positive multiple of `p` with coprime integer coefficients.
    fn from_rational(p: &PolynomialR) -> Self {
        let l = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let v: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        IntPoly(v).primitive()
    }

    fn primitive(mut self) -> Self {
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.0 {
                *c /= &g;
            }
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn derivative(&self) -> Self {
        let v: Vec<BigInt> = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPoly(v).trimmed().primitive()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// Sign of the value at `t`, by homogenised Horner evaluation.
    fn sign_at(&self, t: &Rational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let (p, q) = (t.numer(), t.denom());
        let mut acc = self.0[d].clone();
        let mut qpow = BigInt::one();
        for i in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.0[i] * &qpow;
        }
        sign_of(&acc)
    }

    fn sign_at_infinity(&self) -> i8 {
        self.0.last().map_or(0, sign_of)
    }

    /// Positive multiple of the remainder of `self` by `d` (pseudo-division
    /// with the multiplier `|lc(d)|` at each step).
    fn positive_prem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-division by zero");
        let lb = d.0[dd].clone();
        let lb_abs = lb.abs();
        let lb_sign = BigInt::from(sign_of(&lb));
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let lr = r[r.len() - 1].clone() * &lb_sign;
            for c in r.iter_mut() {
                *c *= &lb_abs;
            }
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &lr * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            // Keep coefficients small without changing the sign.
            r = IntPoly(r).primitive().0;
        }
        IntPoly(r)
    }
}

fn sign_of(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain `p, p', −rem(p, p'), …` with each member scaled by a positive constant.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &PolynomialR) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmSequence { chain };
        }
        let p0 = IntPoly::from_rational(p);
        let p1 = p0.derivative();
        chain.push(p0);
        if p1.degree().is_none() {
            return SturmSequence { chain };
        }
        chain.push(p1);
        loop {
            let n = chain.len();
            let r = chain[n - 2].positive_prem(&chain[n - 1]);
            if r.degree().is_none() {
                break;
            }
            let next = IntPoly(r.0.into_iter().map(|c| -c).collect()).primitive();
            chain.push(next);
        }
        SturmSequence { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, t: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(t)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity()))
    }

    /// Distinct roots in `(a, b]` of the chain's squarefree head.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_roots_above(&self, a: &Rational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_at_infinity())
    }
}

/// Outcome of the decision `p(λ) ≥ 0` for all `λ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegCheck {
    pub holds: bool,
    /// A rational `λ* > 0` with `p(λ*) < 0`, present exactly when `holds` is false.
    pub witness: Option<Rational>,
}

impl NonnegCheck {
    fn pass() -> Self {
        NonnegCheck { holds: true, witness: None }
    }

    fn fail(w: Rational) -> Self {
        NonnegCheck { holds: false, witness: Some(w) }
    }
}

/// Exact decision of `p ≥ 0` on `[0, ∞)`, with a certified negative point on failure.
pub fn nonneg_on_nonneg_axis(p: &PolynomialR) -> NonnegCheck {
    let Some(lc) = p.leading_coefficient() else {
        return NonnegCheck::pass();
    };
    let bound = p.cauchy_bound();
    if lc.is_negative() {
        // No root at or beyond the bound, so the sign there is that of lc.
        debug_assert!(p.eval(&bound).is_negative());
        return NonnegCheck::fail(bound);
    }
    let odd = p.odd_multiplicity_part();
    if odd.degree().unwrap_or(0) == 0 {
        return NonnegCheck::pass();
    }
    let sturm = SturmSequence::new(&odd);
    let zero = Rational::zero();
    if sturm.count_roots(&zero, &bound) == 0 {
        return NonnegCheck::pass();
    }
    NonnegCheck::fail(find_negative_point(p, &odd, &sturm, bound))
}

/// Bisection over isolating intervals of sign-changing roots until a sample is negative.
fn find_negative_point(
    p: &PolynomialR,
    odd: &PolynomialR,
    sturm: &SturmSequence,
    bound: Rational,
) -> Rational {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut lo = Rational::zero();
    let mut hi = bound;
    for _ in 0..100_000 {
        let mid = (&lo + &hi) * &half;
        if p.eval(&mid).is_negative() {
            return mid;
        }
        if odd.eval(&mid).is_zero() {
            return around_exact_root(p, &mid, &(&hi - &lo));
        }
        if sturm.count_roots(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    unreachable!("bisection failed to find a negative sample");
}

/// `p` changes sign at `r`; probe `r ± h` with shrinking `h`.
fn around_exact_root(p: &PolynomialR, r: &Rational, width: &Rational) -> Rational {
    let mut h = width / int(4);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    loop {
        for cand in [r - &h, r + &h] {
            if cand.is_positive() && p.eval(&cand).is_negative() {
                return cand;
            }
        }
        h *= &half;
    }
}
