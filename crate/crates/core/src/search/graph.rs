use std::collections::HashMap;

use crate::board::{apply_jump, canonical_edge, neighbors, BoardSpec, EdgeId};
use crate::error::{Error, Result};

use super::bits::{Bits, MAX_SQUARES};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Move {
    pub to: usize,
    pub pair: u8,
    pub dx: i64,
    pub dy: i64,
    pub edge: usize,
}

/// Board multigraph indexed by row-major square number. Loops are dropped:
/// no Hamiltonian cycle on two or more squares can use one.
#[derive(Debug)]
pub(crate) struct Graph {
    pub spec: BoardSpec,
    pub size: usize,
    pub moves: Vec<Vec<Move>>,
    pub adj: Vec<Bits>,
    pub edge_ids: Vec<EdgeId>,
    pub edge_index: HashMap<EdgeId, usize>,
}

impl Graph {
    pub fn build(spec: BoardSpec) -> Result<Graph> {
        let size = spec.square_count();
        if size > MAX_SQUARES {
            return Err(Error::InvalidProblem(format!(
                "{spec} has {size} squares; the search handles at most {MAX_SQUARES}"
            )));
        }
        let mut edge_ids = Vec::new();
        let mut edge_index = HashMap::new();
        let mut moves = Vec::with_capacity(size);
        let mut adj = vec![Bits::default(); size];
        for (i, sq) in spec.squares().enumerate() {
            let mut list = Vec::new();
            for j in neighbors(spec, sq) {
                let to = spec.index_of(apply_jump(spec, j)?);
                if to == i {
                    continue;
                }
                let id = canonical_edge(spec, j)?;
                let edge = *edge_index.entry(id).or_insert_with(|| {
                    edge_ids.push(id);
                    edge_ids.len() - 1
                });
                adj[i].insert(to);
                list.push(Move {
                    to,
                    pair: j.pair.index() as u8,
                    dx: j.pair.x,
                    dy: j.pair.y,
                    edge,
                });
            }
            moves.push(list);
        }
        Ok(Graph {
            spec,
            size,
            moves,
            adj,
            edge_ids,
            edge_index,
        })
    }

    /// True when `set` induces a connected subgraph (or is empty).
    pub fn connected(&self, set: &Bits) -> bool {
        let Some(seed) = set.first() else {
            return true;
        };
        let mut seen = Bits::single(seed);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = Bits::default();
            for v in frontier.iter() {
                next = next.or(&self.adj[v]);
            }
            next = next.and(set).and_not(&seen);
            seen = seen.or(&next);
            frontier = next;
        }
        seen == *set
    }
}
