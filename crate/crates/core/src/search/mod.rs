//! Hamiltonian tour search on the knight multigraphs.
//!
//! The search walks directed jumps from the base square `(0,0)` and keeps the
//! running lift displacement, so a class target becomes a constraint on the
//! final displacement. Completed tours are always re-validated in full before
//! they are reported or counted; pruning only decides which branches are
//! explored.
//!
//! Every pruning rule is admissible, i.e. it only cuts branches that cannot
//! be completed to a tour satisfying the problem:
//!
//! * **Parity.** A closed tour on `N >= 2` squares has `N` moves and every move
//!   changes `x + y` by an odd amount, so only endpoints with
//!   `a + b = N (mod 2)` are reachable. Targets failing this are dropped up
//!   front; if none remain the problem has no solution.
//! * **Winding bound.** With `r` moves left, each coordinate can change by at
//!   most `2r` and `|dx| + |dy|` by at most `3r`. Branches from which no
//!   admissible endpoint is reachable are cut.
//! * **Dead squares.** Each unvisited square must still be able to get two
//!   path neighbours (one if it is the fixed end of an open path) among the
//!   unvisited squares, the current head and the start. Only neighbours of the
//!   square being left lose options, so only those are re-checked.
//! * **Disconnection.** The unvisited squares form one contiguous stretch of
//!   the final path, so they must induce a connected subgraph adjacent to the
//!   head.
//! * **Required edges.** Every square is incident to exactly two tour edges.
//!   Once a square's incoming edge is fixed, any other required edge at it must
//!   be the outgoing one; two such edges cannot both be.
//! * **Lift pins.** A required lift edge fixes the lift vertex of the squares
//!   it touches; since each square is visited once, arriving there at any
//!   other lift position cannot succeed. The same holds for forbidden images
//!   and row bands.
//!
//! With pruning disabled the search enumerates every simple path and checks
//! all constraints only on completed tours; the two modes are compared by the
//! test suite.

mod bits;
mod graph;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use crate::board::{BoardSpec, DirectedJump, EdgeId, Square, Topology, KNIGHT_PAIRS};
use crate::error::{Error, Result};
use crate::lift::{ClassTarget, LiftPoint};
use crate::tour::Tour;

pub(crate) use bits::Bits;
pub use bits::MAX_SQUARES;
use graph::{Graph, Move};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    FindOne,
    ProveNone,
    CountAll,
}

/// A set of lift vertices, described by their images on a board of
/// `col_modulus x row_modulus` squares (columns unwrapped when `col_modulus`
/// is `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenImage {
    pub col_modulus: Option<i64>,
    pub row_modulus: i64,
    /// `(column, row)` images; a `None` column matches every column.
    pub cells: Vec<(Option<i64>, i64)>,
}

impl ForbiddenImage {
    /// Every vertex whose row image lies in `rows`.
    pub fn rows(row_modulus: i64, rows: RangeInclusive<i64>) -> Self {
        ForbiddenImage {
            col_modulus: None,
            row_modulus,
            cells: rows.map(|r| (None, r)).collect(),
        }
    }

    pub fn cells(col_modulus: Option<i64>, row_modulus: i64, cells: &[(i64, i64)]) -> Self {
        ForbiddenImage {
            col_modulus,
            row_modulus,
            cells: cells.iter().map(|&(a, b)| (Some(a), b)).collect(),
        }
    }

    pub fn hits(&self, p: LiftPoint) -> bool {
        let a = match self.col_modulus {
            Some(m) => p.a.rem_euclid(m),
            None => p.a,
        };
        let b = p.b.rem_euclid(self.row_modulus);
        self.cells
            .iter()
            .any(|&(ca, cb)| cb.rem_euclid(self.row_modulus) == b && ca.is_none_or(|ca| ca == a))
    }
}

/// Constraints on the lift of a closed tour started at the base square.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LiftConstraints {
    /// Edges the lift path must traverse, in either direction.
    pub edges: Vec<(LiftPoint, LiftPoint)>,
    /// Vertices other than the base point the lift may not visit.
    pub forbidden: Option<ForbiddenImage>,
    /// Rows every vertex other than the base point must lie in.
    pub band: Option<RangeInclusive<i64>>,
}

impl LiftConstraints {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.forbidden.is_none() && self.band.is_none()
    }

    /// True when `p`, a vertex other than the base point, is allowed.
    pub fn admits_vertex(&self, p: LiftPoint) -> bool {
        self.band.as_ref().is_none_or(|r| r.contains(&p.b)) && self.forbidden.as_ref().is_none_or(|f| !f.hits(p))
    }

    /// Checks a lift path given as its vertex list.
    pub fn satisfied_by(&self, points: &[LiftPoint]) -> bool {
        let has_edge = |u: LiftPoint, v: LiftPoint| {
            points
                .windows(2)
                .any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u))
        };
        self.edges.iter().all(|&(u, v)| has_edge(u, v)) && points.iter().skip(1).all(|&p| self.admits_vertex(p))
    }
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub spec: BoardSpec,
    pub target: ClassTarget,
    pub required_edges: BTreeSet<EdgeId>,
    pub mode: Mode,
    pub lift: LiftConstraints,
}

impl SearchProblem {
    pub fn new(spec: BoardSpec, target: ClassTarget, mode: Mode) -> Self {
        SearchProblem {
            spec,
            target,
            required_edges: BTreeSet::new(),
            mode,
            lift: LiftConstraints::default(),
        }
    }

    pub fn with_required_edges(mut self, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        self.required_edges.extend(edges);
        self
    }

    pub fn with_lift_constraints(mut self, lift: LiftConstraints) -> Self {
        self.lift = lift;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_wall_ms: u64,
}

impl Budget {
    pub fn new(max_nodes: u64, max_wall_ms: u64) -> Self {
        assert!(max_nodes > 0 && max_wall_ms > 0, "budgets are positive");
        Budget { max_nodes, max_wall_ms }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000, 600_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Tour),
    NoSolution,
    Exhausted(u64),
    BudgetExceeded { nodes: u64, ms: u64 },
}

impl SearchOutcome {
    pub fn tour(&self) -> Option<&Tour> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Found(_) => f.write_str("found"),
            SearchOutcome::NoSolution => f.write_str("no solution"),
            SearchOutcome::Exhausted(c) => write!(f, "exhausted: {c} tours"),
            SearchOutcome::BudgetExceeded { nodes, ms } => {
                write!(f, "budget exceeded after {nodes} nodes / {ms} ms")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub pruning: bool,
    /// Order children by fewest onward moves. Only affects which tour is
    /// found first, never the verdict.
    pub warnsdorff: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            pruning: true,
            warnsdorff: true,
        }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig {
            pruning: true,
            warnsdorff: false,
        }
    }

    pub fn unpruned() -> Self {
        SearchConfig {
            pruning: false,
            warnsdorff: false,
        }
    }
}

fn expect_mode(problem: &SearchProblem, mode: Mode) -> Result<()> {
    if problem.mode == mode {
        Ok(())
    } else {
        Err(Error::InvalidProblem(format!(
            "expected a {mode:?} problem, got {:?}",
            problem.mode
        )))
    }
}

pub fn find_tour(problem: &SearchProblem, budget: Budget) -> Result<SearchOutcome> {
    expect_mode(problem, Mode::FindOne)?;
    Ok(search(problem, budget, SearchConfig::default(), &mut |_| true)?.0)
}

pub fn prove_nonexistence(problem: &SearchProblem, budget: Budget) -> Result<SearchOutcome> {
    expect_mode(problem, Mode::ProveNone)?;
    Ok(search(problem, budget, SearchConfig::exhaustive(), &mut |_| true)?.0)
}

/// Counts closed tours up to rotation and direction.
pub fn count_tours(problem: &SearchProblem, budget: Budget) -> Result<SearchOutcome> {
    expect_mode(problem, Mode::CountAll)?;
    Ok(search(problem, budget, SearchConfig::exhaustive(), &mut |_| true)?.0)
}

/// Closed tour search with explicit configuration. Tours rejected by `accept`
/// are treated as if they did not satisfy the problem.
pub fn search(
    problem: &SearchProblem,
    budget: Budget,
    config: SearchConfig,
    accept: &mut dyn FnMut(&Tour) -> bool,
) -> Result<(SearchOutcome, SearchStats)> {
    let spec = problem.spec;
    problem
        .target
        .check_topology(spec.topology())
        .map_err(|e| Error::InvalidProblem(e.to_string()))?;
    if spec.topology() == Topology::Regular && !matches!(problem.target, ClassTarget::Any | ClassTarget::Identity) {
        return Err(Error::InvalidProblem(format!(
            "regular boards only take `any` or `identity`, got {}",
            problem.target
        )));
    }
    if problem.mode == Mode::CountAll && !problem.lift.edges.is_empty() {
        return Err(Error::InvalidProblem(
            "lift edge pins are direction dependent and cannot be counted up to reversal".into(),
        ));
    }
    let graph = Graph::build(spec)?;
    let required = problem
        .required_edges
        .iter()
        .map(|e| {
            graph
                .edge_index
                .get(e)
                .copied()
                .ok_or_else(|| Error::InvalidProblem(format!("edge {e} is not an edge of {spec}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let targets = match spec.topology() {
        Topology::Regular => Some(vec![LiftPoint::ORIGIN]),
        _ => problem.target.endpoints(spec)?,
    };
    let started = Instant::now();
    let start = 0;

    if graph.size == 1 {
        let tour = Tour::empty(spec)?;
        let ok = required.is_empty()
            && problem.lift.satisfied_by(&[LiftPoint::ORIGIN])
            && targets.as_ref().is_none_or(|t| t.contains(&LiftPoint::ORIGIN))
            && accept(&tour);
        let outcome = match (problem.mode, ok) {
            (Mode::CountAll, ok) => SearchOutcome::Exhausted(ok as u64),
            (_, true) => SearchOutcome::Found(tour),
            (_, false) => SearchOutcome::NoSolution,
        };
        return Ok((outcome, SearchStats { nodes: 1, ms: 0 }));
    }

    let mut dfs = Dfs::new(&graph, config, budget, problem.mode, accept);
    dfs.closed = true;
    dfs.targets = targets;
    dfs.lift_constraints = problem.lift.clone();
    dfs.set_required(&required);
    dfs.pin_lift_edges(spec, &problem.lift.edges)?;
    dfs.started = started;
    dfs.start = start;
    dfs.unvisited = Bits::first_n(graph.size);
    dfs.unvisited.remove(start);

    if config.pruning {
        if let Some(t) = &mut dfs.targets {
            let parity = graph.size as i64;
            t.retain(|e| (e.a + e.b - parity).rem_euclid(2) == 0);
        }
        let hopeless = dfs.targets.as_ref().is_some_and(|t| t.is_empty())
            || dfs.pin_conflict
            || (graph.size >= 3 && graph.adj.iter().any(|a| a.count() < 2))
            || !graph.connected(&Bits::first_n(graph.size));
        if hopeless {
            return Ok((dfs.finish_outcome(), dfs.stats()));
        }
    }
    dfs.step(start);
    Ok((dfs.finish_outcome(), dfs.stats()))
}

/// Open tour on a regular board from `from` to `to`.
pub fn find_open_tour(spec: BoardSpec, from: Square, to: Square, budget: Budget) -> Result<SearchOutcome> {
    if spec.topology() != Topology::Regular {
        return Err(Error::InvalidProblem(
            "open tours are searched on regular boards".into(),
        ));
    }
    Ok(open_search(spec, from, to, &BTreeSet::new(), budget, SearchConfig::default())?.0)
}

/// Hamiltonian path from `from` to `to` using every edge in `required`.
pub fn open_search(
    spec: BoardSpec,
    from: Square,
    to: Square,
    required: &BTreeSet<EdgeId>,
    budget: Budget,
    config: SearchConfig,
) -> Result<(SearchOutcome, SearchStats)> {
    if !spec.contains(from) || !spec.contains(to) {
        return Err(Error::InvalidProblem(format!(
            "endpoints {from}, {to} must lie on {spec}"
        )));
    }
    let graph = Graph::build(spec)?;
    if graph.size == 1 {
        let t = Tour::new(spec, from, Vec::new(), false)?;
        let outcome = if required.is_empty() {
            SearchOutcome::Found(t)
        } else {
            SearchOutcome::NoSolution
        };
        return Ok((outcome, SearchStats::default()));
    }
    if from == to {
        return Err(Error::InvalidProblem(
            "an open tour needs two distinct endpoints".into(),
        ));
    }
    let required = required
        .iter()
        .map(|e| {
            graph
                .edge_index
                .get(e)
                .copied()
                .ok_or_else(|| Error::InvalidProblem(format!("edge {e} is not an edge of {spec}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut accept = |_: &Tour| true;
    let mut dfs = Dfs::new(&graph, config, budget, Mode::FindOne, &mut accept);
    dfs.closed = false;
    dfs.start = spec.index_of(from);
    dfs.end = Some(spec.index_of(to));
    dfs.lift = (from.a, from.b);
    dfs.set_required(&required);
    dfs.unvisited = Bits::first_n(graph.size);
    dfs.unvisited.remove(dfs.start);
    if config.pruning && !graph.connected(&Bits::first_n(graph.size)) {
        return Ok((dfs.finish_outcome(), dfs.stats()));
    }
    dfs.step(dfs.start);
    Ok((dfs.finish_outcome(), dfs.stats()))
}

struct Dfs<'a> {
    g: &'a Graph,
    config: SearchConfig,
    budget: Budget,
    mode: Mode,
    accept: &'a mut dyn FnMut(&Tour) -> bool,

    closed: bool,
    start: usize,
    end: Option<usize>,
    targets: Option<Vec<LiftPoint>>,
    required: Vec<usize>,
    required_at: Vec<Vec<usize>>,
    pinned: Vec<Option<LiftPoint>>,
    pin_conflict: bool,
    lift_constraints: LiftConstraints,

    unvisited: Bits,
    path: Vec<(usize, Move)>,
    lift: (i64, i64),

    started: Instant,
    nodes: u64,
    aborted: bool,
    found: Option<Tour>,
    count: u64,
}

impl<'a> Dfs<'a> {
    fn new(
        g: &'a Graph,
        config: SearchConfig,
        budget: Budget,
        mode: Mode,
        accept: &'a mut dyn FnMut(&Tour) -> bool,
    ) -> Self {
        Dfs {
            g,
            config,
            budget,
            mode,
            accept,
            closed: true,
            start: 0,
            end: None,
            targets: None,
            required: Vec::new(),
            required_at: vec![Vec::new(); g.size],
            pinned: vec![None; g.size],
            pin_conflict: false,
            lift_constraints: LiftConstraints::default(),
            unvisited: Bits::default(),
            path: Vec::with_capacity(g.size),
            lift: (0, 0),
            started: Instant::now(),
            nodes: 0,
            aborted: false,
            found: None,
            count: 0,
        }
    }

    fn set_required(&mut self, required: &[usize]) {
        for &e in required {
            if self.required.contains(&e) {
                continue;
            }
            self.required.push(e);
            let rep = self.g.edge_ids[e].rep();
            let spec = self.g.spec;
            let a = spec.index_of(rep.from);
            let b = spec.index_of(crate::board::apply_jump(spec, rep).expect("edge of board"));
            self.required_at[a].push(e);
            if b != a {
                self.required_at[b].push(e);
            }
        }
    }

    fn pin_lift_edges(&mut self, spec: BoardSpec, edges: &[(LiftPoint, LiftPoint)]) -> Result<()> {
        let mut projected = Vec::new();
        for &(u, v) in edges {
            let (dx, dy) = (v.a - u.a, v.b - u.b);
            let pair = crate::board::KnightPair::new(dx, dy)
                .ok_or_else(|| Error::InvalidProblem(format!("{u}-{v} is not a knight edge")))?;
            let from = u.project(spec);
            let jump = DirectedJump::new(from, pair);
            let id = crate::board::canonical_edge(spec, jump)
                .map_err(|_| Error::InvalidProblem(format!("{u}-{v} does not project to an edge of {spec}")))?;
            projected.push(self.g.edge_index[&id]);
            for p in [u, v] {
                let sq = spec.index_of(p.project(spec));
                if sq == self.start {
                    continue;
                }
                match self.pinned[sq] {
                    Some(q) if q != p => self.pin_conflict = true,
                    _ => self.pinned[sq] = Some(p),
                }
            }
        }
        self.set_required(&projected);
        Ok(())
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            ms: self.started.elapsed().as_millis() as u64,
        }
    }

    fn finish_outcome(&mut self) -> SearchOutcome {
        if let Some(t) = self.found.take() {
            return SearchOutcome::Found(t);
        }
        if self.aborted {
            let s = self.stats();
            return SearchOutcome::BudgetExceeded {
                nodes: s.nodes,
                ms: s.ms,
            };
        }
        match self.mode {
            Mode::CountAll => SearchOutcome::Exhausted(self.count),
            _ => SearchOutcome::NoSolution,
        }
    }

    fn should_stop(&self) -> bool {
        self.aborted || self.found.is_some()
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        let over_time = || self.started.elapsed().as_millis() as u64 > self.budget.max_wall_ms;
        if self.nodes > self.budget.max_nodes || (self.nodes & 0x3ff == 0 && over_time()) {
            self.aborted = true;
        }
        self.aborted
    }

    fn step(&mut self, cur: usize) {
        if self.tick() {
            return;
        }
        if self.unvisited.is_empty() {
            if self.closed {
                self.close(cur);
            } else {
                self.complete();
            }
            return;
        }
        let pruning = self.config.pruning;
        let depth = self.path.len();
        let incoming = self.path.last().map(|(_, mv)| mv.edge);

        // required-edge forcing
        let mut forced: Option<usize> = None;
        let mut first_choices: Option<&[usize]> = None;
        if pruning {
            let req = &self.required_at[cur];
            if cur == self.start && depth == 0 {
                let cap = if self.closed { 2 } else { 1 };
                if req.len() > cap {
                    return;
                }
                if req.len() == cap || (!self.closed && req.len() == 1) {
                    first_choices = Some(req.as_slice());
                }
            } else {
                let mut left = req.iter().filter(|&&e| Some(e) != incoming);
                if let Some(&e) = left.next() {
                    if left.next().is_some() {
                        return;
                    }
                    forced = Some(e);
                }
            }
        }

        let remaining_after = self.unvisited.count() as i64 - 1;
        let last_open_move = self.unvisited.count() == 1;
        let mut children: Vec<(u32, u8, Move)> = Vec::with_capacity(8);
        for mv in &self.g.moves[cur] {
            let t = mv.to;
            if !self.unvisited.contains(t) {
                continue;
            }
            if !self.closed && Some(t) == self.end && !last_open_move {
                continue;
            }
            if pruning {
                if forced.is_some_and(|e| e != mv.edge) {
                    continue;
                }
                if first_choices.is_some_and(|c| !c.contains(&mv.edge)) {
                    continue;
                }
                if !self.viable(cur, mv, remaining_after) {
                    continue;
                }
            }
            let rest = self.unvisited.and_not(&Bits::single(t));
            let key = if self.config.warnsdorff {
                self.g.adj[t].and(&rest).count()
            } else {
                0
            };
            children.push((key, mv.pair, *mv));
        }
        if self.config.warnsdorff {
            children.sort_by_key(|&(k, p, _)| (k, p));
        }
        for (_, _, mv) in children {
            self.unvisited.remove(mv.to);
            self.path.push((cur, mv));
            let saved = self.lift;
            self.lift = (saved.0 + mv.dx, saved.1 + mv.dy);
            self.step(mv.to);
            self.lift = saved;
            self.path.pop();
            self.unvisited.insert(mv.to);
            if self.should_stop() {
                return;
            }
        }
    }

    /// Admissibility checks for moving `cur -> mv.to` with `r_squares`
    /// squares left unvisited afterwards.
    fn viable(&self, cur: usize, mv: &Move, r_squares: i64) -> bool {
        let t = mv.to;
        let g = self.g;
        let lift = LiftPoint::new(self.lift.0 + mv.dx, self.lift.1 + mv.dy);
        if self.closed {
            if let Some(p) = self.pinned[t] {
                if p != lift {
                    return false;
                }
            }
            if !self.lift_constraints.admits_vertex(lift) {
                return false;
            }
            if let Some(targets) = &self.targets {
                // moves still to make, including the closing one
                let r = r_squares + 1;
                let reachable = targets.iter().any(|e| {
                    let (da, db) = ((e.a - lift.a).abs(), (e.b - lift.b).abs());
                    da <= 2 * r && db <= 2 * r && da + db <= 3 * r
                });
                if !reachable {
                    return false;
                }
            }
        }
        let rest = self.unvisited.and_not(&Bits::single(t));
        if rest.is_empty() {
            return !self.closed || g.adj[t].contains(self.start);
        }
        if g.adj[t].and(&rest).is_empty() {
            return false;
        }
        let mut avail = rest;
        avail.insert(t);
        if self.closed {
            avail.insert(self.start);
            if g.adj[self.start].and(&rest).is_empty() {
                return false;
            }
        } else if let Some(e) = self.end {
            if g.adj[e].and(&avail).is_empty() {
                return false;
            }
        }
        for w in g.adj[cur].and(&rest).iter() {
            let need = if Some(w) == self.end { 1 } else { 2 };
            if g.adj[w].and(&avail).count() < need {
                return false;
            }
        }
        g.connected(&rest)
    }

    fn close(&mut self, cur: usize) {
        let first_edge = self.path.first().map(|(_, mv)| mv.edge);
        let closers: Vec<Move> = self.g.moves[cur]
            .iter()
            .filter(|mv| mv.to == self.start)
            .copied()
            .collect();
        for mv in closers {
            if self.g.size == 2 && Some(mv.edge) == first_edge {
                continue;
            }
            // count each undirected cycle once: from the direction whose
            // first edge precedes its closing edge
            if self.mode == Mode::CountAll && !first_edge.is_some_and(|f| f < mv.edge) {
                continue;
            }
            self.path.push((cur, mv));
            self.complete();
            self.path.pop();
            if self.should_stop() {
                return;
            }
        }
    }

    fn complete(&mut self) {
        let spec = self.g.spec;
        let jumps: Vec<DirectedJump> = self
            .path
            .iter()
            .map(|&(from, mv)| DirectedJump::new(spec.square_at(from), KNIGHT_PAIRS[mv.pair as usize]))
            .collect();
        let Ok(tour) = Tour::new(spec, spec.square_at(self.start), jumps, self.closed) else {
            debug_assert!(false, "search produced an invalid tour");
            return;
        };
        let edges: BTreeSet<usize> = self.path.iter().map(|(_, mv)| mv.edge).collect();
        if !self.required.iter().all(|e| edges.contains(e)) {
            return;
        }
        if self.closed {
            let mut points = Vec::with_capacity(self.path.len() + 1);
            let mut at = LiftPoint::ORIGIN;
            points.push(at);
            for (_, mv) in &self.path {
                at = at.offset(mv.dx, mv.dy);
                points.push(at);
            }
            if let Some(t) = &self.targets {
                if !t.contains(&at) {
                    return;
                }
            }
            if !self.lift_constraints.satisfied_by(&points) {
                return;
            }
        }
        if !(self.accept)(&tour) {
            return;
        }
        match self.mode {
            Mode::CountAll => self.count += 1,
            _ => self.found = Some(tour),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{classify, HomotopyClass};

    fn budget() -> Budget {
        Budget::new(5_000_000, 60_000)
    }

    #[test]
    fn forbidden_image_rows_and_cells() {
        let f = ForbiddenImage::rows(8, 0..=3);
        assert!(f.hits(LiftPoint::new(2, 8)));
        assert!(f.hits(LiftPoint::new(0, -5)));
        assert!(!f.hits(LiftPoint::new(0, -4)));
        let c = ForbiddenImage::cells(Some(2), 4, &[(0, 1), (1, 3), (1, 4)]);
        assert!(c.hits(LiftPoint::new(1, 0)));
        assert!(c.hits(LiftPoint::new(3, -1)));
        assert!(!c.hits(LiftPoint::new(0, 0)));
    }

    #[test]
    fn counts_on_tiny_boards() {
        let count = |spec, target| {
            let p = SearchProblem::new(spec, target, Mode::CountAll);
            count_tours(&p, budget()).unwrap()
        };
        assert_eq!(
            count(BoardSpec::cylinder(2, 1).unwrap(), ClassTarget::Any),
            SearchOutcome::Exhausted(1)
        );
        assert_eq!(
            count(BoardSpec::cylinder(1, 1).unwrap(), ClassTarget::Identity),
            SearchOutcome::Exhausted(1)
        );
        assert_eq!(
            count(BoardSpec::regular(4, 4).unwrap(), ClassTarget::Any),
            SearchOutcome::Exhausted(0)
        );
        assert_eq!(
            count(BoardSpec::cylinder(2, 1).unwrap(), ClassTarget::Identity),
            SearchOutcome::Exhausted(0)
        );
    }

    #[test]
    fn two_square_tour_uses_both_parallel_edges() {
        let spec = BoardSpec::cylinder(2, 1).unwrap();
        let p = SearchProblem::new(spec, ClassTarget::Any, Mode::FindOne);
        let t = find_tour(&p, budget()).unwrap().tour().cloned().unwrap();
        let e = t.edges();
        assert_ne!(e[0], e[1]);
        assert_eq!((-classify(spec, &t).unwrap()).max_abs(), 4);
    }

    #[test]
    fn mode_must_match_entry_point() {
        let spec = BoardSpec::cylinder(3, 4).unwrap();
        let p = SearchProblem::new(spec, ClassTarget::Identity, Mode::CountAll);
        assert!(matches!(find_tour(&p, budget()), Err(Error::InvalidProblem(_))));
        let p = SearchProblem::new(spec, ClassTarget::Longitude, Mode::FindOne);
        assert!(matches!(find_tour(&p, budget()), Err(Error::InvalidProblem(_))));
    }

    #[test]
    fn budget_is_reported() {
        let spec = BoardSpec::regular(8, 8).unwrap();
        let p = SearchProblem::new(spec, ClassTarget::Any, Mode::CountAll);
        let out = count_tours(&p, Budget::new(1000, 60_000)).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExceeded { nodes, .. } if nodes > 1000));
    }

    #[test]
    fn required_edge_is_used() {
        let spec = BoardSpec::cylinder(3, 4).unwrap();
        let e = crate::board::canonical_edge(
            spec,
            DirectedJump::new(Square::new(1, 1), crate::board::KnightPair::new(1, 2).unwrap()),
        )
        .unwrap();
        let p = SearchProblem::new(spec, ClassTarget::Identity, Mode::FindOne).with_required_edges([e]);
        let t = find_tour(&p, budget()).unwrap().tour().cloned().unwrap();
        assert!(t.edges().contains(&e));
        assert_eq!(classify(spec, &t).unwrap(), HomotopyClass::Cylinder(0));
    }

    #[test]
    fn open_tour_endpoints() {
        let spec = BoardSpec::regular(5, 5).unwrap();
        let (a, b) = (Square::new(0, 0), Square::new(4, 4));
        let t = find_open_tour(spec, a, b, budget()).unwrap().tour().cloned().unwrap();
        assert_eq!((t.start(), t.end()), (a, b));
        assert!(!t.is_closed());
        // opposite colours on an odd board: impossible
        let out = find_open_tour(spec, a, Square::new(1, 0), budget()).unwrap();
        assert_eq!(out, SearchOutcome::NoSolution);
    }

    impl HomotopyClass {
        fn max_abs(self) -> i64 {
            match self {
                HomotopyClass::Cylinder(k) => k.abs(),
                HomotopyClass::Torus(p, q) => p.abs().max(q.abs()),
            }
        }
    }
}
