#![allow(dead_code)]

use pointgame::rational::{int, rat, Rational};
use pointgame::{Coordinate, Move1D, Move2D};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != int(0))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn coordinate() -> impl Strategy<Value = Coordinate> {
    prop_oneof![
        1 => Just(Coordinate::zero()),
        6 => positive_rational().prop_map(|r| Coordinate::new(r).unwrap()),
    ]
}

/// Arbitrary 1D move with zero sum (last entry balances the others).
pub fn zero_sum_move() -> impl Strategy<Value = Move1D> {
    prop::collection::vec((coordinate(), small_rational()), 1..6).prop_flat_map(|pairs| {
        coordinate().prop_map(move |balance| {
            let mut m = Move1D::from_pairs(pairs.clone());
            let total = m.total();
            m.add_at(balance, &-total);
            m
        })
    })
}

pub fn move2d() -> impl Strategy<Value = Move2D> {
    prop::collection::vec(((coordinate(), coordinate()), small_rational()), 0..8).prop_map(Move2D::from_entries)
}

/// `c·(⟦b⟧ − ⟦a⟧)` with `a < b`, `c > 0`: always valid.
pub fn raise() -> impl Strategy<Value = Move1D> {
    (coordinate(), positive_rational(), positive_rational()).prop_map(|(a, gap, c)| {
        let b = Coordinate::new(a.value() + gap).unwrap();
        let mut m = Move1D::point(b, c.clone());
        m.add_at(a, &-c);
        m
    })
}

/// `c·(⟦wa + (1−w)b⟧ − w⟦a⟧ − (1−w)⟦b⟧)`: a merge, always valid.
pub fn merge() -> impl Strategy<Value = Move1D> {
    (coordinate(), positive_rational(), 1i64..10, positive_rational()).prop_map(|(a, gap, k, c)| {
        let w = rat(k, 10);
        let b = a.value() + gap;
        let mid = &w * a.value() + (int(1) - &w) * &b;
        let mut m = Move1D::point(a.clone(), -(&c * &w));
        m.add_at(Coordinate::new(b).unwrap(), &-(&c * (int(1) - &w)));
        m.add_at(Coordinate::new(mid).unwrap(), &c);
        m
    })
}

pub fn valid_move() -> impl Strategy<Value = Move1D> {
    prop::collection::vec(prop_oneof![raise(), merge()], 1..4)
        .prop_map(|ms| ms.into_iter().fold(Move1D::new(), |a, m| &a + &m))
}
