//! Sparse signed measures on the nonnegative rationals, in one and two dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("coordinate must be nonnegative, got {0}")]
    NegativeCoordinate(Rational),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Rational),
}

/// A point of the closed half-line. Ordering is by exact value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate(Rational);

impl Coordinate {
    pub fn new(value: Rational) -> Result<Self, MoveError> {
        if value.is_negative() {
            Err(MoveError::NegativeCoordinate(value))
        } else {
            Ok(Coordinate(value))
        }
    }

    pub fn from_int(n: u32) -> Self {
        Coordinate(int(n as i64))
    }

    pub fn zero() -> Self {
        Coordinate(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<Rational> for Coordinate {
    type Error = MoveError;
    fn try_from(value: Rational) -> Result<Self, MoveError> {
        Coordinate::new(value)
    }
}

fn accumulate<K: Ord + Clone>(map: &mut BTreeMap<K, Rational>, key: K, v: &Rational) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(slot) => {
            *slot += v;
            if slot.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, v.clone());
        }
    }
}

/// One-dimensional move: finitely many weighted points, zero weights never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Move1D {
    entries: BTreeMap<Coordinate, Rational>,
}

impl Move1D {
    pub fn new() -> Self {
        Self::default()
    }

    /// `v·⟦x⟧`.
    pub fn point(x: Coordinate, v: Rational) -> Self {
        let mut m = Self::new();
        m.add_at(x, &v);
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Coordinate, Rational)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (x, v) in pairs {
            m.add_at(x, &v);
        }
        m
    }

    pub fn add_at(&mut self, x: Coordinate, v: &Rational) {
        accumulate(&mut self.entries, x, v);
    }

    pub fn get(&self, x: &Coordinate) -> Rational {
        self.entries.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coordinate, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, v| a + v)
    }

    /// `Σ x·ℓ(x)`.
    pub fn moment(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |a, (x, v)| a + x.value() * v)
    }

    pub fn one_norm(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, v| a + v.abs())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_pairs(self.entries.iter().map(|(x, v)| (x.clone(), v * c)))
    }

    /// `x ↦ ℓ(cx)`: the point at `x` moves to `x/c`.
    pub fn stretch(&self, c: &Rational) -> Result<Self, MoveError> {
        if !c.is_positive() {
            return Err(MoveError::NonPositiveScale(c.clone()));
        }
        Ok(Self::from_pairs(
            self.entries
                .iter()
                .map(|(x, v)| (Coordinate(x.value() / c), v.clone())),
        ))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| v.is_positive())
    }
}

impl fmt::Display for Move1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})[{x}]")?;
        }
        Ok(())
    }
}

pub type Point = (Coordinate, Coordinate);

/// Two-dimensional move. Keys are `(x, y)`; a row is a fixed `y`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Move2D {
    entries: BTreeMap<Point, Rational>,
}

impl Move2D {
    pub fn new() -> Self {
        Self::default()
    }

    /// `v·⟦x,y⟧`.
    pub fn point(x: Coordinate, y: Coordinate, v: Rational) -> Self {
        let mut m = Self::new();
        m.add_at(x, y, &v);
        m
    }

    /// `⟦x,y⟧` for integer coordinates, mostly for examples and tests.
    pub fn unit(x: u32, y: u32) -> Self {
        Self::point(Coordinate::from_int(x), Coordinate::from_int(y), int(1))
    }

    pub fn from_entries<I: IntoIterator<Item = (Point, Rational)>>(entries: I) -> Self {
        let mut m = Self::new();
        for ((x, y), v) in entries {
            m.add_at(x, y, &v);
        }
        m
    }

    pub fn add_at(&mut self, x: Coordinate, y: Coordinate, v: &Rational) {
        accumulate(&mut self.entries, (x, y), v);
    }

    pub fn get(&self, x: &Coordinate, y: &Coordinate) -> Rational {
        self.entries
            .get(&(x.clone(), y.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, v| a + v)
    }

    pub fn one_norm(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, v| a + v.abs())
    }

    pub fn transpose(&self) -> Self {
        Move2D {
            entries: self
                .entries
                .iter()
                .map(|((x, y), v)| ((y.clone(), x.clone()), v.clone()))
                .collect(),
        }
    }

    /// `(q⁺, q⁻)` with `q = q⁺ − q⁻`.
    pub fn pos_neg_split(&self) -> (Self, Self) {
        let mut pos = Self::new();
        let mut neg = Self::new();
        for (k, v) in &self.entries {
            if v.is_positive() {
                pos.entries.insert(k.clone(), v.clone());
            } else {
                neg.entries.insert(k.clone(), -v);
            }
        }
        (pos, neg)
    }

    pub fn positive_part(&self) -> Self {
        self.pos_neg_split().0
    }

    pub fn negative_part(&self) -> Self {
        self.pos_neg_split().1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_entries(self.entries.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    /// `(x, y) ↦ amplitude·q(cx, cy)`.
    pub fn scale_coords(&self, c: &Rational, amplitude: &Rational) -> Result<Self, MoveError> {
        if !c.is_positive() {
            return Err(MoveError::NonPositiveScale(c.clone()));
        }
        Ok(Self::from_entries(self.entries.iter().map(|((x, y), v)| {
            (
                (Coordinate(x.value() / c), Coordinate(y.value() / c)),
                v * amplitude,
            )
        })))
    }

    /// First point (in key order) with a negative value.
    pub fn first_negative(&self) -> Option<(&Point, &Rational)> {
        self.entries.iter().find(|(_, v)| v.is_negative())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Distinct `y` values carrying mass.
    pub fn row_keys(&self) -> Vec<Coordinate> {
        let mut ys: Vec<Coordinate> = self.entries.keys().map(|(_, y)| y.clone()).collect();
        ys.sort();
        ys.dedup();
        ys
    }

    /// The 1D move `x ↦ q(x, y)`.
    pub fn row(&self, y: &Coordinate) -> Move1D {
        Move1D::from_pairs(
            self.entries
                .iter()
                .filter(|((_, yy), _)| yy == y)
                .map(|((x, _), v)| (x.clone(), v.clone())),
        )
    }

    /// All rows, keyed by `y`.
    pub fn rows(&self) -> BTreeMap<Coordinate, Move1D> {
        let mut out: BTreeMap<Coordinate, Move1D> = BTreeMap::new();
        for ((x, y), v) in &self.entries {
            out.entry(y.clone()).or_default().add_at(x.clone(), v);
        }
        out
    }

    /// The part of `q` lying on the line `y = b`, still as a 2D move.
    pub fn restrict_to_row(&self, b: &Coordinate) -> Self {
        Move2D {
            entries: self
                .entries
                .iter()
                .filter(|((_, y), _)| y == b)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// The part of `q` whose row coordinate satisfies `keep`.
    pub fn filter_rows<F: Fn(&Coordinate) -> bool>(&self, keep: F) -> Self {
        Move2D {
            entries: self
                .entries
                .iter()
                .filter(|((_, y), _)| keep(y))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Every coordinate used on either axis, sorted.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let mut cs: Vec<Coordinate> = self
            .entries
            .keys()
            .flat_map(|(x, y)| [x.clone(), y.clone()])
            .collect();
        cs.sort();
        cs.dedup();
        cs
    }
}

impl fmt::Display for Move2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, ((x, y), v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})[{x},{y}]")?;
        }
        Ok(())
    }
}

macro_rules! linear_ops {
    ($ty:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (k, v) in &rhs.entries {
                    accumulate(&mut out.entries, k.clone(), v);
                }
                out
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect(),
                }
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Mul<&Rational> for &$ty {
            type Output = $ty;
            fn mul(self, c: &Rational) -> $ty {
                self.scale(c)
            }
        }

        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold($ty::default(), |a, b| &a + &b)
            }
        }
    };
}

linear_ops!(Move1D);
linear_ops!(Move2D);
