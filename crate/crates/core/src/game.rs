//! Time-dependent and time-independent point games.

use thiserror::Error;

use crate::moves::{Move2D, Point};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("configuration z_{step} is negative at ({}, {}): {value}", .point.0, .point.1)]
    NegativeConfiguration {
        step: usize,
        point: Point,
        value: Rational,
    },
}

/// Ordered list of moves. Prefix nonnegativity is checked on demand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tdpg {
    pub moves: Vec<Move2D>,
}

impl Tdpg {
    pub fn new(moves: Vec<Move2D>) -> Self {
        Tdpg { moves }
    }

    /// `z₀ = (Σm)⁻` followed by every prefix `z₀ + m₁ + … + m_j`.
    pub fn configurations(&self) -> Result<Vec<Move2D>, GameError> {
        let total: Move2D = self.moves.iter().cloned().sum();
        let mut z = total.negative_part();
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(z.clone());
        for (j, m) in self.moves.iter().enumerate() {
            z = &z + m;
            if let Some((p, v)) = z.first_negative() {
                return Err(GameError::NegativeConfiguration {
                    step: j + 1,
                    point: p.clone(),
                    value: v.clone(),
                });
            }
            out.push(z.clone());
        }
        Ok(out)
    }

    /// Odd-indexed moves (1-based) summed into the first component, even into the second.
    pub fn to_tipg(&self) -> Tipg {
        let mut first = Move2D::new();
        let mut second = Move2D::new();
        for (i, m) in self.moves.iter().enumerate() {
            if i % 2 == 0 {
                first = &first + m;
            } else {
                second = &second + m;
            }
        }
        Tipg { first, second }
    }
}

/// Pair of moves; validity is checked separately.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tipg {
    pub first: Move2D,
    pub second: Move2D,
}

impl Tipg {
    pub fn new(first: Move2D, second: Move2D) -> Self {
        Tipg { first, second }
    }

    /// The game `(g, g⊤)` built from a single move.
    pub fn from_symmetric(g: Move2D) -> Self {
        let gt = g.transpose();
        Tipg { first: g, second: gt }
    }

    pub fn sum(&self) -> Move2D {
        &self.first + &self.second
    }

    /// `∥r₁∥₁ + ∥r₂∥₁`.
    pub fn one_norm(&self) -> Rational {
        self.first.one_norm() + self.second.one_norm()
    }

    /// `((r₁ + r₂⊤)/2, (r₁⊤ + r₂)/2)`.
    pub fn symmetrize(&self) -> Self {
        let half = rat(1, 2);
        let first = (&self.first + &self.second.transpose()).scale(&half);
        let second = (&self.first.transpose() + &self.second).scale(&half);
        Tipg { first, second }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::Coordinate;

    fn pt(x: u32, y: u32) -> Point {
        (Coordinate::from_int(x), Coordinate::from_int(y))
    }

    #[test]
    fn two_move_configurations() {
        let m1 = Move2D::unit(2, 0) - Move2D::unit(1, 0);
        let m2 = Move2D::unit(2, 3) - Move2D::unit(2, 0);
        let game = Tdpg::new(vec![m1.clone(), m2.clone()]);
        let z = game.configurations().unwrap();
        assert_eq!(z, vec![Move2D::unit(1, 0), Move2D::unit(2, 0), Move2D::unit(2, 3)]);
        assert_eq!(game.to_tipg(), Tipg::new(m1, m2));
    }

    #[test]
    fn empty_game_has_one_empty_configuration() {
        assert_eq!(Tdpg::default().configurations().unwrap(), vec![Move2D::new()]);
    }

    #[test]
    fn negative_prefix_is_reported() {
        let m1 = Move2D::unit(4, 0) - Move2D::unit(3, 0);
        let m2 = Move2D::unit(3, 0) - Move2D::unit(4, 0);
        let err = Tdpg::new(vec![m1, m2]).configurations().unwrap_err();
        let GameError::NegativeConfiguration { step, point, .. } = err;
        assert_eq!(step, 1);
        assert_eq!(point, pt(3, 0));
    }

    #[test]
    fn initial_configuration_absorbs_later_demand() {
        // (3,0) is part of (Σm)⁻, so no prefix goes negative.
        let m1 = Move2D::unit(2, 0) - Move2D::unit(1, 0);
        let m2 = Move2D::unit(4, 0) - Move2D::unit(3, 0);
        assert!(Tdpg::new(vec![m1, m2]).configurations().is_ok());
    }

    #[test]
    fn parity_split() {
        let ms: Vec<Move2D> = (1..=4).map(|k| Move2D::unit(k, 0)).collect();
        let t = Tdpg::new(ms.clone()).to_tipg();
        assert_eq!(t.first, &ms[0] + &ms[2]);
        assert_eq!(t.second, &ms[1] + &ms[3]);
    }

    #[test]
    fn symmetrize_identities() {
        let target = Move2D::unit(1, 1).scale(&rat(2, 1)) - Move2D::unit(3, 0) - Move2D::unit(0, 3);
        let r1 = Move2D::unit(1, 2) + Move2D::unit(3, 0).scale(&rat(-5, 3));
        let r = Tipg::new(r1.clone(), &target - &r1);
        let s = r.symmetrize();
        assert_eq!(s.second, s.first.transpose());
        assert_eq!(s.sum(), r.sum());
        // An asymmetric sum is symmetrised rather than kept.
        let a = Tipg::new(Move2D::unit(1, 2), Move2D::new()).symmetrize();
        assert_eq!(a.sum(), (Move2D::unit(1, 2) + Move2D::unit(2, 1)).scale(&rat(1, 2)));
        let g = Move2D::unit(1, 1) - Move2D::unit(0, 1);
        let sym = Tipg::from_symmetric(g);
        assert_eq!(sym.symmetrize(), sym);
    }
}
