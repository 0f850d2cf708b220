//! Coordinate grids for synthesis.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use super::LpError;
use crate::moves::Coordinate;
use crate::rational::{best_approximation, int, parse_rational_lenient, rat, to_f64, Rational};

/// `lo·ratioᵏ` for `k = 0, 1, …` while the value stays at most `hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometric {
    pub lo: Rational,
    pub hi: Rational,
    pub ratio: f64,
    /// Geometric points are snapped to rationals with at most this denominator.
    pub max_den: u64,
}

/// Mandatory points `{0, 1, 2 − τ}` are always added by [`build_grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub geometric: Option<Geometric>,
    pub extra: Vec<Coordinate>,
}

impl GridSpec {
    /// Only the mandatory points.
    pub fn mandatory() -> Self {
        GridSpec { geometric: None, extra: Vec::new() }
    }

    /// `lo = 1/8`, `hi = 32`, `ratio = √2`, snapped to denominators up to 64.
    pub fn default_geometric() -> Self {
        GridSpec {
            geometric: Some(Geometric { lo: rat(1, 8), hi: int(32), ratio: 2f64.sqrt(), max_den: 64 }),
            extra: Vec::new(),
        }
    }

    pub fn with_extra(mut self, pts: impl IntoIterator<Item = Coordinate>) -> Self {
        self.extra.extend(pts);
        self
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::default_geometric()
    }
}

/// Parses `b`, `p/q`, decimals, or `b^e` with `e` a rational, optionally parenthesised.
fn parse_real(s: &str) -> Result<f64, LpError> {
    let bad = || LpError::MalformedGrid(format!("cannot read number '{s}'"));
    let s = s.trim();
    if let Some((b, e)) = s.split_once('^') {
        let b = parse_rational_lenient(b.trim()).map_err(|_| bad())?;
        let e = e.trim().trim_start_matches('(').trim_end_matches(')');
        let e = parse_rational_lenient(e).map_err(|_| bad())?;
        return Ok(to_f64(&b).powf(to_f64(&e)));
    }
    parse_rational_lenient(s).map(|r| to_f64(&r)).map_err(|_| bad())
}

fn parse_coordinate(s: &str) -> Result<Coordinate, LpError> {
    let v = parse_rational_lenient(s.trim())
        .map_err(|_| LpError::MalformedGrid(format!("cannot read coordinate '{s}'")))?;
    Coordinate::new(v).map_err(|_| LpError::MalformedGrid(format!("negative coordinate '{s}'")))
}

impl FromStr for GridSpec {
    type Err = LpError;

    /// `default`, `mandatory`, or comma-separated `lo=..,hi=..,ratio=..[,den=..][,extra=a;b]`.
    /// `extra` may also appear alone.
    fn from_str(s: &str) -> Result<Self, LpError> {
        let s = s.trim();
        match s {
            "default" => return Ok(Self::default_geometric()),
            "mandatory" | "" => return Ok(Self::mandatory()),
            _ => {}
        }
        let (mut lo, mut hi, mut ratio, mut den) = (None, None, None, 64u64);
        let mut extra = Vec::new();
        for part in s.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| LpError::MalformedGrid(format!("expected key=value, got '{part}'")))?;
            let v = v.trim();
            match k.trim() {
                "lo" => lo = Some(parse_rational_lenient(v).map_err(|_| LpError::MalformedGrid(format!("bad lo '{v}'")))?),
                "hi" => hi = Some(parse_rational_lenient(v).map_err(|_| LpError::MalformedGrid(format!("bad hi '{v}'")))?),
                "ratio" => ratio = Some(parse_real(v)?),
                "den" => den = v.parse().map_err(|_| LpError::MalformedGrid(format!("bad den '{v}'")))?,
                "extra" => {
                    for p in v.split(';').filter(|p| !p.trim().is_empty()) {
                        extra.push(parse_coordinate(p)?);
                    }
                }
                other => return Err(LpError::MalformedGrid(format!("unknown key '{other}'"))),
            }
        }
        let geometric = match (lo, hi, ratio) {
            (None, None, None) => None,
            (Some(lo), Some(hi), Some(ratio)) => Some(Geometric { lo, hi, ratio, max_den: den }),
            _ => return Err(LpError::MalformedGrid(String::from("lo, hi and ratio go together"))),
        };
        Ok(GridSpec { geometric, extra })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(g) = &self.geometric {
            parts.push(format!("lo={},hi={},ratio={},den={}", g.lo, g.hi, g.ratio, g.max_den));
        }
        if !self.extra.is_empty() {
            let e: Vec<String> = self.extra.iter().map(|c| c.to_string()).collect();
            parts.push(format!("extra={}", e.join(";")));
        }
        if parts.is_empty() {
            f.write_str("mandatory")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Sorted, deduplicated union of mandatory, geometric and extra points.
pub fn build_grid(spec: &GridSpec, tau: &Rational) -> Result<Vec<Coordinate>, LpError> {
    if !tau.is_positive() || tau > &int(1) {
        return Err(LpError::MalformedGrid(format!("tau = {tau} outside (0, 1]")));
    }
    let mut pts: BTreeSet<Coordinate> = BTreeSet::new();
    pts.insert(Coordinate::zero());
    pts.insert(Coordinate::from_int(1));
    pts.insert(Coordinate::new(int(2) - tau).expect("2 - tau is positive"));
    if let Some(g) = &spec.geometric {
        if !g.lo.is_positive() {
            return Err(LpError::MalformedGrid(format!("lo = {} must be positive", g.lo)));
        }
        if g.hi < g.lo {
            return Err(LpError::MalformedGrid(format!("hi = {} is below lo = {}", g.hi, g.lo)));
        }
        if !(g.ratio.is_finite() && g.ratio > 1.0) {
            return Err(LpError::MalformedGrid(format!("ratio = {} must exceed 1", g.ratio)));
        }
        pts.insert(Coordinate::new(g.lo.clone()).expect("positive"));
        let (lo, hi) = (to_f64(&g.lo), to_f64(&g.hi));
        for k in 1.. {
            let v = lo * g.ratio.powi(k);
            if v > hi * (1.0 + 1e-12) {
                break;
            }
            let r = best_approximation(v, g.max_den).expect("finite");
            pts.insert(Coordinate::new(r).expect("positive"));
        }
    }
    pts.extend(spec.extra.iter().cloned());
    Ok(pts.into_iter().collect())
}
