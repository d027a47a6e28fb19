mod common;

use std::sync::OnceLock;

use common::harvest;
use knight_surfaces::board::{apply_jump, canonical_edge, neighbors, reverse_jump};
use knight_surfaces::lift::parity_admits;
use knight_surfaces::shell::{deserialize, serialize};
use knight_surfaces::{classify, lift_tour, BoardSpec, HomotopyClass, KnightPair, Square, Topology, Tour};
use proptest::prelude::*;

fn pool() -> &'static [Tour] {
    static POOL: OnceLock<Vec<Tour>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v = Vec::new();
        for t in [Topology::Cylinder, Topology::Torus, Topology::Regular] {
            for (m, n) in [
                (1, 1),
                (2, 1),
                (3, 2),
                (2, 3),
                (1, 4),
                (4, 3),
                (3, 4),
                (2, 5),
                (5, 2),
                (3, 5),
                (4, 4),
                (6, 2),
            ] {
                v.extend(harvest(BoardSpec::new(t, m, n).unwrap(), 20));
            }
        }
        v
    })
}

fn topology() -> impl Strategy<Value = Topology> {
    prop_oneof![Just(Topology::Regular), Just(Topology::Cylinder), Just(Topology::Torus)]
}

proptest! {
    #[test]
    fn pool_tours_are_closed_and_hamiltonian(i in any::<prop::sample::Index>()) {
        let t = i.get(pool());
        let spec = t.spec();
        let mut sq = t.squares();
        sq.sort();
        sq.dedup();
        prop_assert_eq!(sq.len(), spec.square_count());
        prop_assert!(t.is_closed());
    }

    #[test]
    fn class_is_rotation_invariant_and_reversal_odd(i in any::<prop::sample::Index>(), r in 0usize..64) {
        let t = i.get(pool());
        let spec = t.spec();
        prop_assume!(spec.topology().is_surface());
        let c = classify(spec, t).unwrap();
        prop_assert_eq!(classify(spec, &t.rotated(r % t.len().max(1))).unwrap(), c);
        prop_assert_eq!(classify(spec, &t.reversed()).unwrap(), -c);
    }

    #[test]
    fn classes_obey_parity_and_winding_bounds(i in any::<prop::sample::Index>()) {
        let t = i.get(pool());
        let spec = t.spec();
        prop_assume!(spec.topology().is_surface());
        let (m, n) = (spec.m(), spec.n());
        let c = classify(spec, t).unwrap();
        prop_assert!(parity_admits(spec, c));
        // the single-square tour has no moves, so no congruence applies
        let odd = if m * n == 1 { 0 } else { m * n };
        match c {
            HomotopyClass::Cylinder(k) => {
                prop_assert_eq!((k * n - odd).rem_euclid(2), 0);
                prop_assert!(k.abs() <= 2 * m);
                let end = lift_tour(spec, t).unwrap().endpoint();
                prop_assert_eq!(end.a, 0);
                prop_assert_eq!(end.b, k * n);
            }
            HomotopyClass::Torus(p, q) => {
                prop_assert_eq!((p * m + q * n - odd).rem_euclid(2), 0);
                prop_assert!(p.abs() <= 2 * n && q.abs() <= 2 * m);
            }
        }
    }

    #[test]
    fn serialization_round_trips_byte_for_byte(i in any::<prop::sample::Index>()) {
        let t = i.get(pool());
        let bytes = serialize(t);
        let back = deserialize(&bytes).unwrap();
        prop_assert_eq!(&back, t);
        prop_assert_eq!(serialize(&back), bytes);
    }

    #[test]
    fn every_jump_has_a_reverse_on_the_same_edge(t in topology(), m in 1i64..7, n in 1i64..7, a in 0i64..7, b in 0i64..7) {
        let spec = BoardSpec::new(t, m, n).unwrap();
        let sq = Square::new(a % m, b % n);
        for j in neighbors(spec, sq) {
            let r = reverse_jump(spec, j).unwrap();
            prop_assert_eq!(apply_jump(spec, r).unwrap(), sq);
            prop_assert_eq!(r.pair, -j.pair);
            prop_assert_eq!(canonical_edge(spec, r).unwrap(), canonical_edge(spec, j).unwrap());
        }
    }

    #[test]
    fn off_board_moves_only_on_regular_edges(m in 1i64..7, n in 1i64..7, a in 0i64..7, b in 0i64..7, k in 0usize..8) {
        let sq = Square::new(a % m, b % n);
        let pair = knight_surfaces::board::KNIGHT_PAIRS[k];
        let torus = BoardSpec::torus(m, n).unwrap();
        prop_assert!(apply_jump(torus, knight_surfaces::DirectedJump::new(sq, pair)).is_ok());
        let inside = (0..m).contains(&(sq.a + pair.x)) && (0..n).contains(&(sq.b + pair.y));
        let reg = BoardSpec::regular(m, n).unwrap();
        prop_assert_eq!(apply_jump(reg, knight_surfaces::DirectedJump::new(sq, pair)).is_ok(), inside);
    }

    #[test]
    fn knight_pairs_are_exactly_the_l_shapes(x in -3i64..4, y in -3i64..4) {
        let l = (x.abs() == 1 && y.abs() == 2) || (x.abs() == 2 && y.abs() == 1);
        prop_assert_eq!(KnightPair::new(x, y).is_some(), l);
    }
}

#[test]
fn pool_is_large_and_varied() {
    let p = pool();
    assert!(p.len() >= 300, "{}", p.len());
    assert!(p.iter().any(|t| t.spec().topology() == Topology::Torus));
}
