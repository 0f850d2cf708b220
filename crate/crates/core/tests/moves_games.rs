mod common;

use common::{move2d, positive_rational, small_rational};
use pointgame::game::{Tdpg, Tipg};
use pointgame::rational::{int, rat};
use pointgame::{Coordinate, Move2D};
use proptest::prelude::*;

#[test]
fn configurations_start_from_negative_part() {
    let t = Tdpg::new(vec![Move2D::unit(1, 1) - Move2D::unit(0, 1)]);
    let cs = t.configurations().unwrap();
    assert_eq!(cs[0], Move2D::unit(0, 1));
    assert_eq!(cs[1], Move2D::unit(1, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transpose_is_an_involution(m in move2d()) {
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(m.transpose().total(), m.total());
        prop_assert_eq!(m.transpose().one_norm(), m.one_norm());
    }

    #[test]
    fn split_recombines(m in move2d()) {
        let (p, n) = m.pos_neg_split();
        prop_assert!(p.is_nonnegative() && n.is_nonnegative());
        prop_assert_eq!(&p - &n, m.clone());
        prop_assert_eq!(p.one_norm() + n.one_norm(), m.one_norm());
    }

    #[test]
    fn linear_structure(a in move2d(), b in move2d(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a + &b).total(), a.total() + b.total());
        prop_assert!((&a + &b).one_norm() <= a.one_norm() + b.one_norm());
        prop_assert_eq!((&a * &c).total(), a.total() * &c);
    }

    #[test]
    fn rows_partition_the_move(m in move2d()) {
        let rebuilt = m
            .rows()
            .into_iter()
            .fold(Move2D::new(), |acc, (y, row)| {
                let mut acc = acc;
                for (x, v) in row.iter() {
                    acc.add_at(x.clone(), y.clone(), v);
                }
                acc
            });
        prop_assert_eq!(rebuilt, m);
    }

    /// Symmetrising keeps symmetric sums and changes nothing for symmetric pairs.
    #[test]
    fn symmetrize_preserves_symmetric_sums(g in move2d(), h in move2d()) {
        let sym = &h + &h.transpose();
        let r = Tipg::new(g.clone(), &sym - &g);
        let s = r.symmetrize();
        prop_assert_eq!(s.sum(), sym);
        prop_assert_eq!(s.second.clone(), s.first.transpose());
        prop_assert!(s.one_norm() <= r.one_norm());
        let twice = Tipg::from_symmetric(g.clone());
        prop_assert_eq!(twice.symmetrize(), twice);
    }

    #[test]
    fn scaling_coordinates_scales_moments(m in move2d(), c in positive_rational()) {
        let s = m.scale_coords(&c, &int(1)).unwrap();
        prop_assert_eq!(s.total(), m.total());
        prop_assert_eq!(s.scale_coords(&(int(1) / &c), &int(1)).unwrap(), m);
    }
}

#[test]
fn scale_coords_rejects_nonpositive() {
    assert!(Move2D::unit(1, 1).scale_coords(&int(0), &int(1)).is_err());
    let c = Coordinate::new(rat(3, 2)).unwrap();
    assert_eq!(Move2D::unit(2, 2).scale_coords(&rat(4, 3), &int(1)).unwrap(), Move2D::point(c.clone(), c, int(1)));
}
