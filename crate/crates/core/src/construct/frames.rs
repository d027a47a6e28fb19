//! Auxiliary paths spliced in by the column-appending steps.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::board::{canonical_edge, BoardSpec, DirectedJump, KnightPair, Square, KNIGHT_PAIRS};
use crate::search::{open_search, Budget, SearchConfig, SearchOutcome};

fn edge_id(spec: BoardSpec, u: Square, v: Square) -> crate::board::EdgeId {
    let pair = KnightPair::new(v.a - u.a, v.b - u.b).expect("knight edge");
    canonical_edge(spec, DirectedJump::new(u, pair)).expect("edge on board")
}

/// Hamiltonian path on `R(4,3)` from `(0,2)` to `(0,1)` through the edge
/// `(3,0)-(2,2)`, as a square sequence.
pub(crate) fn column_block_path() -> Option<&'static [Square]> {
    static PATH: OnceLock<Option<Vec<Square>>> = OnceLock::new();
    PATH.get_or_init(|| {
        let spec = BoardSpec::regular(4, 3).ok()?;
        let required: BTreeSet<_> = [edge_id(spec, Square::new(3, 0), Square::new(2, 2))].into();
        let (out, _) = open_search(
            spec,
            Square::new(0, 2),
            Square::new(0, 1),
            &required,
            Budget::default(),
            SearchConfig::exhaustive(),
        )
        .ok()?;
        match out {
            SearchOutcome::Found(t) => Some(t.squares()),
            _ => None,
        }
    })
    .as_deref()
}

/// Two vertex-disjoint paths covering the regular `w x h` board, joining the
/// given endpoint pairs and together using every edge in `required`.
pub(crate) fn two_path_cover(
    w: i64,
    h: i64,
    ends: [(Square, Square); 2],
    required: &[(Square, Square)],
) -> Option<[Vec<Square>; 2]> {
    let size = (w * h) as usize;
    assert!(size <= 64, "cover search is for small blocks");
    let idx = |s: Square| (s.b * w + s.a) as usize;
    let inside = |s: Square| (0..w).contains(&s.a) && (0..h).contains(&s.b);
    struct Ctx<'a> {
        w: i64,
        h: i64,
        ends: [(Square, Square); 2],
        required: &'a [(Square, Square)],
        paths: [Vec<Square>; 2],
        used: u64,
        full: u64,
    }
    fn has_edge(paths: &[Vec<Square>; 2], u: Square, v: Square) -> bool {
        paths.iter().any(|p| {
            p.windows(2)
                .any(|e| (e[0] == u && e[1] == v) || (e[0] == v && e[1] == u))
        })
    }
    fn go(c: &mut Ctx, k: usize) -> bool {
        let at = *c.paths[k].last().expect("path has a start");
        let bit = |s: Square, w: i64| 1u64 << (s.b * w + s.a);
        if at == c.ends[k].1 {
            if k == 0 {
                let s = c.ends[1].0;
                if c.used & bit(s, c.w) != 0 {
                    return false;
                }
                c.used |= bit(s, c.w);
                c.paths[1].push(s);
                if go(c, 1) {
                    return true;
                }
                c.paths[1].pop();
                c.used &= !bit(s, c.w);
                return false;
            }
            return c.used == c.full && c.required.iter().all(|&(u, v)| has_edge(&c.paths, u, v));
        }
        for p in KNIGHT_PAIRS {
            let s = Square::new(at.a + p.x, at.b + p.y);
            if !(0..c.w).contains(&s.a) || !(0..c.h).contains(&s.b) || c.used & bit(s, c.w) != 0 {
                continue;
            }
            // the other path's endpoints are reserved for it
            let other = c.ends[1 - k];
            if k == 0 && (s == other.0 || s == other.1) {
                continue;
            }
            c.used |= bit(s, c.w);
            c.paths[k].push(s);
            if go(c, k) {
                return true;
            }
            c.paths[k].pop();
            c.used &= !bit(s, c.w);
        }
        false
    }
    if !ends.iter().all(|&(a, b)| inside(a) && inside(b)) {
        return None;
    }
    let full = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    let s0 = ends[0].0;
    let mut ctx = Ctx {
        w,
        h,
        ends,
        required,
        paths: [vec![s0], Vec::new()],
        used: 1 << idx(s0),
        full,
    };
    if go(&mut ctx, 0) {
        Some(ctx.paths)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(a: i64, b: i64) -> Square {
        Square::new(a, b)
    }

    #[test]
    fn block_path_has_the_named_shape() {
        let p = column_block_path().expect("path exists");
        assert_eq!(p.len(), 12);
        assert_eq!((p[0], p[11]), (sq(0, 2), sq(0, 1)));
        assert!(p
            .windows(2)
            .any(|e| (e[0], e[1]) == (sq(3, 0), sq(2, 2)) || (e[1], e[0]) == (sq(3, 0), sq(2, 2))));
    }

    #[test]
    fn cover_splits_the_block() {
        let req = [(sq(2, 0), sq(1, 2)), (sq(1, 0), sq(2, 2))];
        let found = [
            [(sq(0, 1), sq(1, 1)), (sq(0, 3), sq(1, 3))],
            [(sq(0, 1), sq(0, 3)), (sq(1, 1), sq(1, 3))],
            [(sq(0, 1), sq(1, 3)), (sq(1, 1), sq(0, 3))],
        ]
        .iter()
        .filter_map(|&e| two_path_cover(3, 4, e, &req))
        .collect::<Vec<_>>();
        assert!(!found.is_empty());
        for [a, b] in found {
            assert_eq!(a.len() + b.len(), 12);
        }
    }
}
