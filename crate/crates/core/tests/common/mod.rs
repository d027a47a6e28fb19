//! Test-side oracles written without the library's graph or search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use knight_surfaces::search::{search, SearchConfig};
use knight_surfaces::{BoardSpec, Budget, ClassTarget, Mode, SearchProblem, Topology, Tour};

const PAIRS: [(i64, i64); 8] = [(-2, -1), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)];

/// Wrapped target of a jump, or `None` if it leaves the board.
fn step(t: Topology, m: i64, n: i64, a: i64, b: i64, (x, y): (i64, i64)) -> Option<(i64, i64)> {
    let (mut a2, mut b2) = (a + x, b + y);
    if t == Topology::Torus {
        a2 = a2.rem_euclid(m);
    }
    if t != Topology::Regular {
        b2 = b2.rem_euclid(n);
    }
    ((0..m).contains(&a2) && (0..n).contains(&b2)).then_some((a2, b2))
}

/// Edges as unordered `{(square, pair), (target, -pair)}` classes.
pub fn naive_edge_count(t: Topology, m: i64, n: i64) -> usize {
    let mut edges = BTreeSet::new();
    for a in 0..m {
        for b in 0..n {
            for p in PAIRS {
                if let Some((a2, b2)) = step(t, m, n, a, b, p) {
                    let fwd = (a, b, p.0, p.1);
                    let back = (a2, b2, -p.0, -p.1);
                    edges.insert(fwd.min(back));
                }
            }
        }
    }
    edges.len()
}

/// Summed displacement `(dx, dy)` of every directed Hamiltonian cycle from
/// `(0,0)`. Each undirected tour on two or more squares appears twice, once
/// per direction; the single-square board yields the empty cycle once.
pub fn naive_cycles(t: Topology, m: i64, n: i64) -> Vec<(i64, i64)> {
    let total = (m * n) as usize;
    if total == 1 {
        return vec![(0, 0)];
    }
    let mut w = Walker {
        t,
        m,
        n,
        total,
        seen: vec![vec![false; n as usize]; m as usize],
        used: Vec::new(),
        out: Vec::new(),
    };
    w.seen[0][0] = true;
    w.rec((0, 0), (0, 0), 0);
    w.out
}

struct Walker {
    t: Topology,
    m: i64,
    n: i64,
    total: usize,
    seen: Vec<Vec<bool>>,
    used: Vec<(i64, i64, i64, i64)>,
    out: Vec<(i64, i64)>,
}

impl Walker {
    fn rec(&mut self, at: (i64, i64), d: (i64, i64), depth: usize) {
        for p in PAIRS {
            let Some(to) = step(self.t, self.m, self.n, at.0, at.1, p) else {
                continue;
            };
            let e = (at.0, at.1, p.0, p.1).min((to.0, to.1, -p.0, -p.1));
            if self.used.contains(&e) {
                continue;
            }
            let nd = (d.0 + p.0, d.1 + p.1);
            if depth + 1 == self.total {
                if to == (0, 0) {
                    self.out.push(nd);
                }
                continue;
            }
            if self.seen[to.0 as usize][to.1 as usize] {
                continue;
            }
            self.seen[to.0 as usize][to.1 as usize] = true;
            self.used.push(e);
            self.rec(to, nd, depth + 1);
            self.used.pop();
            self.seen[to.0 as usize][to.1 as usize] = false;
        }
    }
}

/// Whether a directed displacement realizes `target`.
pub fn naive_matches(t: Topology, m: i64, n: i64, d: (i64, i64), target: ClassTarget) -> bool {
    let (p, q) = (d.0 / m, d.1 / n);
    match (t, target) {
        (_, ClassTarget::Any) => true,
        (Topology::Cylinder, ClassTarget::Identity) => q == 0,
        (Topology::Cylinder, ClassTarget::Generator) => q.abs() == 1,
        (Topology::Torus, ClassTarget::Identity) => (p, q) == (0, 0),
        (Topology::Torus, ClassTarget::Longitude) => p == 0 && q.abs() == 1,
        _ => panic!("oracle does not handle {target} on {t}"),
    }
}

/// Undirected tours of the target class.
pub fn naive_count(t: Topology, m: i64, n: i64, target: ClassTarget) -> u64 {
    let hits = naive_cycles(t, m, n)
        .into_iter()
        .filter(|&d| naive_matches(t, m, n, d, target))
        .count() as u64;
    if m * n == 1 {
        hits
    } else {
        hits / 2
    }
}

pub fn targets(t: Topology) -> Vec<ClassTarget> {
    match t {
        Topology::Regular => vec![ClassTarget::Any],
        Topology::Cylinder => vec![ClassTarget::Identity, ClassTarget::Generator, ClassTarget::Any],
        Topology::Torus => vec![ClassTarget::Identity, ClassTarget::Longitude, ClassTarget::Any],
    }
}

pub const TOPOLOGIES: [Topology; 3] = [Topology::Regular, Topology::Cylinder, Topology::Torus];

/// Every `(m, n)` with `m * n <= limit`.
pub fn small_sizes(limit: i64) -> Vec<(i64, i64)> {
    (1..=limit).flat_map(|m| (1..=limit / m).map(move |n| (m, n))).collect()
}

/// Up to `cap` distinct closed tours of any class on `spec`.
pub fn harvest(spec: BoardSpec, cap: usize) -> Vec<Tour> {
    let mut got = Vec::new();
    let problem = SearchProblem::new(spec, ClassTarget::Any, Mode::CountAll);
    let mut accept = |t: &Tour| {
        if got.len() < cap {
            got.push(t.clone());
        }
        true
    };
    search(
        &problem,
        Budget::new(2_000_000, 20_000),
        SearchConfig::default(),
        &mut accept,
    )
    .expect("harvest search");
    got
}
