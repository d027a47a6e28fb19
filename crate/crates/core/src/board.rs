//! Squares, knight pairs, jumps and the edge structure of the regular,
//! cylindrical and toroidal knight multigraphs.
//!
//! A board is `m` columns by `n` rows. Squares are `(a, b)` with
//! `0 <= a < m` and `0 <= b < n`, `b` increasing upward. On a cylinder the
//! rows wrap (`b` is taken mod `n`); on a torus the columns wrap as well.
//!
//! An edge is an equivalence class of two directed jumps: `(s, p)` and
//! `(s + p, -p)`. Jumps with the same endpoints but non-opposite knight pairs
//! are different edges, so small cylinders and tori carry parallel edges and
//! loops. Nothing is ever deduplicated.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Regular,
    Cylinder,
    Torus,
}

impl Topology {
    pub fn name(self) -> &'static str {
        match self {
            Topology::Regular => "regular",
            Topology::Cylinder => "cylinder",
            Topology::Torus => "torus",
        }
    }

    pub fn parse(s: &str) -> Option<Topology> {
        match s {
            "regular" => Some(Topology::Regular),
            "cylinder" => Some(Topology::Cylinder),
            "torus" => Some(Topology::Torus),
            _ => None,
        }
    }

    pub fn is_surface(self) -> bool {
        self != Topology::Regular
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoardSpec {
    topology: Topology,
    m: i64,
    n: i64,
}

impl BoardSpec {
    pub fn new(topology: Topology, m: i64, n: i64) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::InvalidDimensions { m, n });
        }
        Ok(BoardSpec { topology, m, n })
    }

    pub fn regular(m: i64, n: i64) -> Result<Self> {
        Self::new(Topology::Regular, m, n)
    }

    pub fn cylinder(m: i64, n: i64) -> Result<Self> {
        Self::new(Topology::Cylinder, m, n)
    }

    pub fn torus(m: i64, n: i64) -> Result<Self> {
        Self::new(Topology::Torus, m, n)
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Number of columns.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// Number of rows.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn square_count(&self) -> usize {
        (self.m * self.n) as usize
    }

    pub fn with_topology(&self, topology: Topology) -> BoardSpec {
        BoardSpec { topology, ..*self }
    }

    /// The same topology with columns and rows exchanged.
    pub fn transposed(&self) -> BoardSpec {
        BoardSpec {
            topology: self.topology,
            m: self.n,
            n: self.m,
        }
    }

    pub fn contains(&self, sq: Square) -> bool {
        (0..self.m).contains(&sq.a) && (0..self.n).contains(&sq.b)
    }

    /// Squares in row-major order: `(0,0), (1,0), ..., (m-1,0), (0,1), ...`.
    pub fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        (0..self.n).flat_map(move |b| (0..self.m).map(move |a| Square::new(a, b)))
    }

    /// Row-major index of a square on this board.
    pub fn index_of(&self, sq: Square) -> usize {
        (sq.b * self.m + sq.a) as usize
    }

    pub fn square_at(&self, index: usize) -> Square {
        let i = index as i64;
        Square::new(i % self.m, i / self.m)
    }
}

impl fmt::Display for BoardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}x{}", self.topology, self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Square {
    pub a: i64,
    pub b: i64,
}

impl Square {
    pub const fn new(a: i64, b: i64) -> Self {
        Square { a, b }
    }

    /// Red squares have even coordinate sum.
    pub fn is_red(&self) -> bool {
        (self.a + self.b).rem_euclid(2) == 0
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnightPair {
    pub x: i64,
    pub y: i64,
}

/// All knight pairs, lexicographic by `(x, y)`.
pub const KNIGHT_PAIRS: [KnightPair; 8] = [
    KnightPair { x: -2, y: -1 },
    KnightPair { x: -2, y: 1 },
    KnightPair { x: -1, y: -2 },
    KnightPair { x: -1, y: 2 },
    KnightPair { x: 1, y: -2 },
    KnightPair { x: 1, y: 2 },
    KnightPair { x: 2, y: -1 },
    KnightPair { x: 2, y: 1 },
];

impl KnightPair {
    /// Returns `None` unless `{|x|, |y|} = {1, 2}`.
    pub fn new(x: i64, y: i64) -> Option<Self> {
        let (ax, ay) = (x.abs(), y.abs());
        ((ax == 1 && ay == 2) || (ax == 2 && ay == 1)).then_some(KnightPair { x, y })
    }

    pub fn transposed(self) -> Self {
        KnightPair { x: self.y, y: self.x }
    }

    /// Position in [`KNIGHT_PAIRS`].
    pub fn index(self) -> usize {
        KNIGHT_PAIRS
            .iter()
            .position(|&p| p == self)
            .expect("knight pair invariant")
    }
}

impl std::ops::Neg for KnightPair {
    type Output = KnightPair;

    fn neg(self) -> KnightPair {
        KnightPair { x: -self.x, y: -self.y }
    }
}

impl fmt::Display for KnightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn knight_pairs() -> Vec<KnightPair> {
    KNIGHT_PAIRS.to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectedJump {
    pub from: Square,
    pub pair: KnightPair,
}

impl DirectedJump {
    pub fn new(from: Square, pair: KnightPair) -> Self {
        DirectedJump { from, pair }
    }

    fn sort_key(&self) -> (i64, i64, i64, i64) {
        (self.from.a, self.from.b, self.pair.x, self.pair.y)
    }
}

impl PartialOrd for DirectedJump {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DirectedJump {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for DirectedJump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.pair, self.from)
    }
}

/// Canonical (lexicographically least) directed jump of an edge class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    rep: DirectedJump,
}

impl EdgeId {
    pub fn rep(&self) -> DirectedJump {
        self.rep
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

pub fn apply_jump(spec: BoardSpec, jump: DirectedJump) -> Result<Square> {
    if !spec.contains(jump.from) {
        return Err(Error::InvalidJump(jump));
    }
    let a = jump.from.a + jump.pair.x;
    let b = jump.from.b + jump.pair.y;
    let landing = match spec.topology {
        Topology::Regular => Square::new(a, b),
        Topology::Cylinder => Square::new(a, b.rem_euclid(spec.n)),
        Topology::Torus => Square::new(a.rem_euclid(spec.m), b.rem_euclid(spec.n)),
    };
    if spec.contains(landing) {
        Ok(landing)
    } else {
        Err(Error::InvalidJump(jump))
    }
}

/// True when the jump is valid and its landing square is reached only by
/// wrapping around an identified border.
pub fn wraps(spec: BoardSpec, jump: DirectedJump) -> bool {
    let a = jump.from.a + jump.pair.x;
    let b = jump.from.b + jump.pair.y;
    apply_jump(spec, jump).is_ok() && !spec.contains(Square::new(a, b))
}

pub fn neighbors(spec: BoardSpec, sq: Square) -> Vec<DirectedJump> {
    if !spec.contains(sq) {
        return Vec::new();
    }
    KNIGHT_PAIRS
        .iter()
        .map(|&pair| DirectedJump::new(sq, pair))
        .filter(|&j| apply_jump(spec, j).is_ok())
        .collect()
}

pub fn reverse_jump(spec: BoardSpec, jump: DirectedJump) -> Result<DirectedJump> {
    let to = apply_jump(spec, jump)?;
    Ok(DirectedJump::new(to, -jump.pair))
}

pub fn canonical_edge(spec: BoardSpec, jump: DirectedJump) -> Result<EdgeId> {
    let rev = reverse_jump(spec, jump)?;
    Ok(EdgeId { rep: jump.min(rev) })
}

pub fn edge_count(spec: BoardSpec) -> usize {
    let directed: usize = spec.squares().map(|sq| neighbors(spec, sq).len()).sum();
    directed / 2
}
