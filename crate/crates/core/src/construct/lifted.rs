//! Editing lift paths: edge replacement, concatenation and projection back to
//! tours.

use crate::board::{BoardSpec, KnightPair, Square};
use crate::error::Result;
use crate::lift::{lift_tour, LiftPoint};
use crate::tour::Tour;

pub(crate) fn pt(a: i64, b: i64) -> LiftPoint {
    LiftPoint::new(a, b)
}

/// Position `i` such that `{pts[i], pts[i+1]} = {u, v}`, and whether the
/// edge is traversed from `u` to `v`.
pub(crate) fn find_edge(pts: &[LiftPoint], u: LiftPoint, v: LiftPoint) -> Option<(usize, bool)> {
    pts.windows(2).enumerate().find_map(|(i, w)| {
        if w[0] == u && w[1] == v {
            Some((i, true))
        } else if w[0] == v && w[1] == u {
            Some((i, false))
        } else {
            None
        }
    })
}

/// Replaces edge `via[0] - via[last]` by the path `via`, in whichever
/// direction the edge is traversed.
pub(crate) fn replace_edge(pts: &mut Vec<LiftPoint>, via: &[LiftPoint]) -> std::result::Result<(), String> {
    let (u, v) = (via[0], via[via.len() - 1]);
    let (i, forward) = find_edge(pts, u, v).ok_or_else(|| format!("edge {u}-{v} is not on the path"))?;
    let mut inner = via[1..via.len() - 1].to_vec();
    if !forward {
        inner.reverse();
    }
    pts.splice(i + 1..i + 1, inner);
    Ok(())
}

pub(crate) fn translate(pts: &[LiftPoint], da: i64, db: i64) -> Vec<LiftPoint> {
    pts.iter().map(|p| p.offset(da, db)).collect()
}

/// Appends `tail`, which must start where `pts` ends.
pub(crate) fn concat(pts: &mut Vec<LiftPoint>, tail: &[LiftPoint]) -> std::result::Result<(), String> {
    match (pts.last(), tail.first()) {
        (Some(a), Some(b)) if a == b => {
            pts.extend_from_slice(&tail[1..]);
            Ok(())
        }
        _ => Err("concatenated paths do not meet".into()),
    }
}

/// Projects a lift starting at the base point to a closed tour on `spec`.
pub(crate) fn tour_from_lift(spec: BoardSpec, pts: &[LiftPoint]) -> Result<Tour> {
    let moves: Option<Vec<KnightPair>> = pts
        .windows(2)
        .map(|w| KnightPair::new(w[1].a - w[0].a, w[1].b - w[0].b))
        .collect();
    let moves = moves.ok_or_else(|| crate::error::Error::InvalidTour("lift step is not a knight pair".into()))?;
    debug_assert_eq!(pts.first(), Some(&LiftPoint::ORIGIN));
    Tour::from_moves(spec, Square::new(0, 0), &moves, true)
}

/// Lifts of the tour in both directions, the stored direction first.
pub(crate) fn lifts(spec: BoardSpec, tour: &Tour) -> Result<[Vec<LiftPoint>; 2]> {
    Ok([lift_tour(spec, tour)?.points, lift_tour(spec, &tour.reversed())?.points])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replacement_respects_direction() {
        let mut p = vec![pt(0, 0), pt(1, 2), pt(2, 4)];
        replace_edge(&mut p, &[pt(2, 4), pt(9, 9), pt(1, 2)]).unwrap();
        assert_eq!(p, vec![pt(0, 0), pt(1, 2), pt(9, 9), pt(2, 4)]);
        replace_edge(&mut p, &[pt(0, 0), pt(5, 5), pt(1, 2)]).unwrap();
        assert_eq!(p[..3], [pt(0, 0), pt(5, 5), pt(1, 2)]);
        assert!(replace_edge(&mut p, &[pt(0, 0), pt(2, 4)]).is_err());
    }

    #[test]
    fn concatenation_needs_a_common_point() {
        let mut p = vec![pt(0, 0), pt(1, 2)];
        concat(&mut p, &[pt(1, 2), pt(3, 3)]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(concat(&mut p, &[pt(0, 0)]).is_err());
    }
}
