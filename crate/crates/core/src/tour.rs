//! Closed and open knight's tours as sequences of directed jumps.

use std::collections::HashSet;

use crate::board::{apply_jump, canonical_edge, reverse_jump, BoardSpec, DirectedJump, EdgeId, KnightPair, Square};
use crate::error::{Error, Result};

/// A Hamiltonian cycle (`closed`) or path (`!closed`) on a board.
///
/// Closed tours have `m*n` jumps, the last one landing on `start`, except on a
/// single-square board where the tour is empty. Open tours have `m*n - 1`
/// jumps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    spec: BoardSpec,
    start: Square,
    jumps: Vec<DirectedJump>,
    closed: bool,
}

impl Tour {
    pub fn new(spec: BoardSpec, start: Square, jumps: Vec<DirectedJump>, closed: bool) -> Result<Self> {
        let tour = Tour {
            spec,
            start,
            jumps,
            closed,
        };
        tour.validate()?;
        Ok(tour)
    }

    /// Builds the jump list by walking `moves` from `start`.
    pub fn from_moves(spec: BoardSpec, start: Square, moves: &[KnightPair], closed: bool) -> Result<Self> {
        let mut jumps = Vec::with_capacity(moves.len());
        let mut at = start;
        for &pair in moves {
            let j = DirectedJump::new(at, pair);
            at = apply_jump(spec, j).map_err(|_| Error::InvalidTour(format!("jump {j} leaves the board")))?;
            jumps.push(j);
        }
        Tour::new(spec, start, jumps, closed)
    }

    pub fn empty(spec: BoardSpec) -> Result<Self> {
        Tour::new(spec, Square::new(0, 0), Vec::new(), true)
    }

    pub fn spec(&self) -> BoardSpec {
        self.spec
    }

    pub fn start(&self) -> Square {
        self.start
    }

    pub fn jumps(&self) -> &[DirectedJump] {
        &self.jumps
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn moves(&self) -> Vec<KnightPair> {
        self.jumps.iter().map(|j| j.pair).collect()
    }

    /// Squares in visiting order, each exactly once.
    pub fn squares(&self) -> Vec<Square> {
        let mut out = vec![self.start];
        for (i, j) in self.jumps.iter().enumerate() {
            if self.closed && i + 1 == self.jumps.len() {
                break;
            }
            out.push(apply_jump(self.spec, *j).expect("validated tour"));
        }
        out
    }

    /// The last square of an open tour (the start for closed tours).
    pub fn end(&self) -> Square {
        match self.jumps.last() {
            Some(j) => apply_jump(self.spec, *j).expect("validated tour"),
            None => self.start,
        }
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.jumps
            .iter()
            .map(|j| canonical_edge(self.spec, *j).expect("validated tour"))
            .collect()
    }

    /// The same closed tour started `r` jumps later.
    pub fn rotated(&self, r: usize) -> Tour {
        assert!(self.closed, "only closed tours rotate");
        if self.jumps.is_empty() {
            return self.clone();
        }
        let r = r % self.jumps.len();
        let mut jumps = self.jumps[r..].to_vec();
        jumps.extend_from_slice(&self.jumps[..r]);
        Tour {
            spec: self.spec,
            start: jumps[0].from,
            jumps,
            closed: true,
        }
    }

    /// Rotates a closed tour so that it begins at `sq`.
    pub fn starting_at(&self, sq: Square) -> Option<Tour> {
        if self.start == sq {
            return Some(self.clone());
        }
        let r = self.jumps.iter().position(|j| j.from == sq)?;
        Some(self.rotated(r))
    }

    /// The tour traversed backwards.
    pub fn reversed(&self) -> Tour {
        let jumps: Vec<_> = self
            .jumps
            .iter()
            .rev()
            .map(|j| reverse_jump(self.spec, *j).expect("validated tour"))
            .collect();
        let start = if self.closed { self.start } else { self.end() };
        Tour {
            spec: self.spec,
            start,
            jumps,
            closed: self.closed,
        }
    }

    /// Reinterprets the tour on another board with the same squares, e.g. a
    /// cylinder tour viewed on the torus that contains it.
    pub fn on_board(&self, spec: BoardSpec) -> Result<Tour> {
        Tour::new(spec, self.start, self.jumps.clone(), self.closed)
    }

    /// Mirrors columns and rows: a tour on `spec` becomes one on
    /// `spec.transposed()`.
    pub fn transposed(&self) -> Result<Tour> {
        let t = |s: Square| Square::new(s.b, s.a);
        let jumps = self
            .jumps
            .iter()
            .map(|j| DirectedJump::new(t(j.from), j.pair.transposed()))
            .collect();
        Tour::new(self.spec.transposed(), t(self.start), jumps, self.closed)
    }

    fn validate(&self) -> Result<()> {
        let spec = self.spec;
        let squares = spec.square_count();
        let bad = |msg: String| Err(Error::InvalidTour(msg));
        if !spec.contains(self.start) {
            return bad(format!("start {} is off the board", self.start));
        }
        let expected = match (self.closed, squares) {
            (true, 1) => 0,
            (true, s) => s,
            (false, s) => s - 1,
        };
        if self.jumps.len() != expected {
            return bad(format!("expected {expected} jumps, found {}", self.jumps.len()));
        }
        let mut seen = HashSet::with_capacity(squares);
        seen.insert(self.start);
        let mut at = self.start;
        for (i, j) in self.jumps.iter().enumerate() {
            if j.from != at {
                return bad(format!("jump {i} starts at {} but the knight is on {at}", j.from));
            }
            at = match apply_jump(spec, *j) {
                Ok(s) => s,
                Err(_) => return bad(format!("jump {i} ({j}) is not a move of {spec}")),
            };
            let last = i + 1 == self.jumps.len();
            if self.closed && last {
                if at != self.start {
                    return bad(format!("closing jump lands on {at}, not the start {}", self.start));
                }
            } else if !seen.insert(at) {
                return bad(format!("square {at} is visited twice"));
            }
        }
        if self.closed && squares == 2 {
            let e = self.edges();
            if e[0] == e[1] {
                return bad("a two-square tour must use two distinct edges".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(x: i64, y: i64) -> KnightPair {
        KnightPair::new(x, y).unwrap()
    }

    #[test]
    fn cylinder_two_by_one_tour() {
        let c21 = BoardSpec::cylinder(2, 1).unwrap();
        let t = Tour::from_moves(c21, Square::new(0, 0), &[kp(1, 2), kp(-1, 2)], true).unwrap();
        assert_eq!(t.squares(), vec![Square::new(0, 0), Square::new(1, 0)]);
        // going out and back along one edge is not a cycle
        let err = Tour::from_moves(c21, Square::new(0, 0), &[kp(1, 2), kp(-1, -2)], true);
        assert!(matches!(err, Err(Error::InvalidTour(_))));
    }

    #[test]
    fn empty_tour_only_on_single_square() {
        assert!(Tour::empty(BoardSpec::cylinder(1, 1).unwrap()).is_ok());
        assert!(Tour::empty(BoardSpec::torus(1, 1).unwrap()).is_ok());
        assert!(Tour::empty(BoardSpec::torus(1, 2).unwrap()).is_err());
    }

    #[test]
    fn rejects_revisits_and_bad_chains() {
        let t12 = BoardSpec::torus(1, 2).unwrap();
        let o = Square::new(0, 0);
        assert!(Tour::from_moves(t12, o, &[kp(2, 1), kp(-2, 1)], true).is_ok());
        // (2,2) wrap lands back on the start too early
        assert!(Tour::from_moves(t12, o, &[kp(1, 2), kp(2, 1)], true).is_err());
        let jumps = vec![DirectedJump::new(o, kp(2, 1)), DirectedJump::new(o, kp(2, 1))];
        assert!(Tour::new(t12, o, jumps, true).is_err());
    }

    #[test]
    fn reverse_and_rotate() {
        let t12 = BoardSpec::torus(1, 2).unwrap();
        let t = Tour::from_moves(t12, Square::new(0, 0), &[kp(2, 1), kp(-2, 1)], true).unwrap();
        let r = t.reversed();
        assert_eq!(r.moves(), vec![kp(2, -1), kp(-2, -1)]);
        assert_eq!(r.reversed(), t);
        let rot = t.rotated(1);
        assert_eq!(rot.start(), Square::new(0, 1));
        assert_eq!(rot.starting_at(Square::new(0, 0)).unwrap(), t);
    }

    #[test]
    fn open_tour_validation() {
        let r33 = BoardSpec::regular(3, 3).unwrap();
        // no open tour covers the centre of 3x3, so anything is rejected
        assert!(Tour::from_moves(r33, Square::new(0, 0), &[kp(1, 2); 8], false).is_err());
        let r14 = BoardSpec::regular(1, 1).unwrap();
        let t = Tour::from_moves(r14, Square::new(0, 0), &[], false).unwrap();
        assert_eq!(t.end(), Square::new(0, 0));
    }
}
