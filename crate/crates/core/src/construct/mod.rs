//! Inductive tour families.
//!
//! Every family works on lifts: a nullhomotopic tour is a closed cycle in the
//! strip (or plane) cover, a generator or longitude tour is a path from the
//! base point to `(0, +n)` or `(0, -n)`. An induction step edits the lift,
//! either replacing hook edges by short detours through new columns or rows,
//! or appending a translated copy of a fixed path, and projects the result
//! back to the board at the next size.
//!
//! Base cases come from constrained search: the hook edges of a family are
//! required lift edges, and the avoidance conditions of the appending
//! families are imposed as row bands on the lift. For the appending families
//! the band is the tight one (every vertex but the base point in the rows
//! strictly between the two ends of the path); a path in that band satisfies
//! the stated avoidance condition and keeps doing so after every step.

mod frames;
mod lifted;

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::board::{canonical_edge, BoardSpec, DirectedJump, KnightPair, Square, Topology};
use crate::error::{Error, Result};
use crate::lift::{classify, matches_target, ClassTarget, HomotopyClass, LiftPoint};
use crate::search::{
    self, find_tour, open_search, Budget, ForbiddenImage, LiftConstraints, Mode, SearchConfig, SearchOutcome,
    SearchProblem,
};
use crate::shell::document::tour_checksum;
use crate::theorems::predicates::{
    cyl_gen_predicate, cyl_null_predicate, schwenk_predicate, tori_null_predicate, torus_lon_predicate,
    watkins_predicate,
};
use crate::tour::Tour;

use lifted::{concat, lifts, pt, replace_edge, tour_from_lift, translate};

/// Steps a base case must survive when the family's hooks alone do not
/// guarantee that the projected result is a tour.
pub const LOOKAHEAD_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "NullCyl_Mx1")]
    NullCylMx1,
    #[serde(rename = "NullCyl_Mx2")]
    NullCylMx2,
    #[serde(rename = "NullCyl_Mx3")]
    NullCylMx3,
    #[serde(rename = "NullCyl_3xN")]
    NullCyl3xN,
    #[serde(rename = "NullCyl_Mx4")]
    NullCylMx4,
    #[serde(rename = "NullCyl_4xN")]
    NullCyl4xN,
    #[serde(rename = "NullTorus_Small")]
    NullTorusSmall,
    #[serde(rename = "GenCyl_Mx1")]
    GenCylMx1,
    #[serde(rename = "GenCyl_Mx2")]
    GenCylMx2,
    #[serde(rename = "GenCyl_Mx3")]
    GenCylMx3,
    #[serde(rename = "GenCyl_3xN")]
    GenCyl3xN,
    #[serde(rename = "GenCyl_Mx4")]
    GenCylMx4,
    #[serde(rename = "GenCyl_5xN")]
    GenCyl5xN,
    #[serde(rename = "GenCyl_Delegated")]
    GenCylDelegated,
    #[serde(rename = "LonTorus_1xN")]
    LonTorus1xN,
    #[serde(rename = "LonTorus_2xN")]
    LonTorus2xN,
    #[serde(rename = "LonTorus_4xN")]
    LonTorus4xN,
}

use Family::*;

impl Family {
    pub const ALL: [Family; 17] = [
        NullCylMx1,
        NullCylMx2,
        NullCylMx3,
        NullCyl3xN,
        NullCylMx4,
        NullCyl4xN,
        NullTorusSmall,
        GenCylMx1,
        GenCylMx2,
        GenCylMx3,
        GenCyl3xN,
        GenCylMx4,
        GenCyl5xN,
        GenCylDelegated,
        LonTorus1xN,
        LonTorus2xN,
        LonTorus4xN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NullCylMx1 => "NullCyl_Mx1",
            NullCylMx2 => "NullCyl_Mx2",
            NullCylMx3 => "NullCyl_Mx3",
            NullCyl3xN => "NullCyl_3xN",
            NullCylMx4 => "NullCyl_Mx4",
            NullCyl4xN => "NullCyl_4xN",
            NullTorusSmall => "NullTorus_Small",
            GenCylMx1 => "GenCyl_Mx1",
            GenCylMx2 => "GenCyl_Mx2",
            GenCylMx3 => "GenCyl_Mx3",
            GenCyl3xN => "GenCyl_3xN",
            GenCylMx4 => "GenCyl_Mx4",
            GenCyl5xN => "GenCyl_5xN",
            GenCylDelegated => "GenCyl_Delegated",
            LonTorus1xN => "LonTorus_1xN",
            LonTorus2xN => "LonTorus_2xN",
            LonTorus4xN => "LonTorus_4xN",
        }
    }

    pub fn topology(self) -> Topology {
        match self {
            NullTorusSmall | LonTorus1xN | LonTorus2xN | LonTorus4xN => Topology::Torus,
            _ => Topology::Cylinder,
        }
    }

    pub fn target(self) -> ClassTarget {
        match self {
            NullCylMx1 | NullCylMx2 | NullCylMx3 | NullCyl3xN | NullCylMx4 | NullCyl4xN | NullTorusSmall => {
                ClassTarget::Identity
            }
            LonTorus1xN | LonTorus2xN | LonTorus4xN => ClassTarget::Longitude,
            _ => ClassTarget::Generator,
        }
    }

    pub fn spec(self, m: i64, n: i64) -> Result<BoardSpec> {
        BoardSpec::new(self.topology(), m, n)
    }

    /// Sizes the induction starts from.
    pub fn base_sizes(self) -> &'static [(i64, i64)] {
        match self {
            NullCylMx1 => &[(4, 1)],
            NullCylMx2 => &[(3, 2), (6, 2)],
            NullCylMx4 => &[(3, 4), (5, 4), (7, 4)],
            NullCyl4xN => &[(4, 5)],
            GenCylMx1 => &[(3, 1)],
            GenCylMx2 => &[(3, 2), (6, 2)],
            GenCylMx3 => &[(3, 3), (5, 3)],
            GenCyl3xN => &[(3, 4), (3, 7), (3, 9), (3, 10)],
            GenCylMx4 => &[(5, 4), (6, 4), (7, 4)],
            GenCyl5xN => &[(5, 4), (5, 6)],
            LonTorus1xN => &[(1, 2), (1, 3)],
            LonTorus2xN => &[(2, 2)],
            LonTorus4xN => &[(4, 4), (4, 6)],
            NullCylMx3 | NullCyl3xN | NullTorusSmall | GenCylDelegated => &[],
        }
    }

    /// Sizes covered by a single derived tour with no induction from it.
    pub fn standalone_sizes(self) -> &'static [(i64, i64)] {
        match self {
            NullCylMx3 => &[(4, 3), (6, 3), (8, 3)],
            NullCyl3xN => &[(3, 4), (3, 6), (3, 8)],
            NullTorusSmall => &[(2, 2), (4, 2), (4, 4)],
            GenCyl3xN => &[(3, 5), (3, 6)],
            GenCyl5xN => &[(5, 5)],
            LonTorus4xN => &[(4, 2)],
            GenCylDelegated => &[(6, 6), (7, 5), (5, 7)],
            _ => &[],
        }
    }

    /// Growth of `(m, n)` per induction step.
    pub fn step(self) -> Option<(i64, i64)> {
        match self {
            NullCylMx1 | NullCylMx2 | GenCylMx1 | GenCylMx2 => Some((2, 0)),
            NullCylMx4 | GenCylMx4 => Some((3, 0)),
            GenCylMx3 => Some((4, 0)),
            NullCyl4xN | LonTorus1xN | LonTorus2xN => Some((0, 2)),
            GenCyl3xN | GenCyl5xN | LonTorus4xN => Some((0, 4)),
            NullCylMx3 | NullCyl3xN | NullTorusSmall | GenCylDelegated => None,
        }
    }

    /// Whether the family yields a tour on the `m x n` board.
    pub fn admits(self, m: i64, n: i64) -> bool {
        if m < 1 || n < 1 {
            return false;
        }
        if self == GenCylDelegated {
            let both_odd = m % 2 == 1 && n % 2 == 1;
            return (both_odd && m >= 5 && n >= 5 && m.max(n) > 5) || (m >= 6 && n >= 6 && n % 2 == 0);
        }
        self.standalone_sizes().contains(&(m, n)) || self.base_for(m, n).is_some()
    }

    /// The base size reaching `(m, n)` in the fewest steps, and the step count.
    pub fn base_for(self, m: i64, n: i64) -> Option<((i64, i64), usize)> {
        let (dm, dn) = self.step()?;
        self.base_sizes()
            .iter()
            .filter_map(|&(bm, bn)| {
                let steps = if dm > 0 {
                    (n == bn && m >= bm && (m - bm) % dm == 0).then(|| (m - bm) / dm)
                } else {
                    (m == bm && n >= bn && (n - bn) % dn == 0).then(|| (n - bn) / dn)
                };
                steps.map(|s| ((bm, bn), s as usize))
            })
            .min_by_key(|&(_, s)| s)
    }

    fn needs_lookahead(self) -> bool {
        matches!(self, NullCyl4xN | LonTorus2xN | GenCylMx4)
    }

    /// The induction hypothesis at `(m, n)`.
    pub fn hook(self, m: i64, n: i64) -> HookSpec {
        let mut h = HookSpec {
            family: self,
            m,
            n,
            edges: Vec::new(),
            avoid: None,
            endpoint: None,
        };
        let e = |a: (i64, i64), b: (i64, i64)| (pt(a.0, a.1), pt(b.0, b.1));
        match self {
            NullCylMx1 => h.edges = vec![e((m - 2, -m / 2 + 1), (m - 1, -m / 2 + 3))],
            NullCylMx2 => {
                let p = if m % 2 == 0 { m - 1 } else { m };
                assert!(p % 2 == 1, "hook rows are integers");
                h.edges = vec![
                    e((m - 1, (5 - p) / 2), (m - 2, (9 - p) / 2)),
                    e((m - 1, (p - 3) / 2), (m - 2, (p - 7) / 2)),
                ];
            }
            NullCylMx4 => h.edges = vec![e((m - 2, -1), (m - 1, -3))],
            NullCyl4xN => {
                h.edges = vec![
                    e((0, -n + 1), (2, -n + 2)),
                    e((1, -n + 1), (3, -n + 2)),
                    e((0, n - 1), (2, n)),
                    e((1, n - 1), (3, n)),
                ]
            }
            GenCylMx1 => {
                assert!(m % 2 == 1, "hook rows are integers");
                h.edges = vec![e((m - 1, (3 - m) / 2), (m - 2, (-m - 1) / 2))];
            }
            GenCylMx2 => h.edges = vec![e((m - 1, 2), (m - 2, 0)), e((m - 1, 1), (m - 2, -1))],
            GenCylMx3 => h.edges = vec![e((m - 1, 1), (m - 2, 3))],
            GenCylMx4 => h.edges = vec![e((m - 1, 0), (m - 2, 2)), e((m - 2, 0), (m - 1, 2))],
            GenCyl3xN | GenCyl5xN | LonTorus4xN => {
                h.endpoint = Some(pt(0, -n));
                h.avoid = Some(ForbiddenImage::rows(n + 4, 0..=3));
            }
            LonTorus1xN => {
                h.endpoint = Some(pt(0, n));
                h.avoid = Some(ForbiddenImage::rows(n + 2, n + 1..=n + 1));
            }
            LonTorus2xN => {
                h.endpoint = Some(pt(0, -n));
                h.avoid = Some(ForbiddenImage::cells(Some(2), n + 2, &[(0, 1), (1, 3), (1, 4)]));
            }
            NullCylMx3 | NullCyl3xN | NullTorusSmall | GenCylDelegated => {}
        }
        h
    }

    /// The tight band imposed on base cases of the appending families.
    fn band(self, n: i64) -> Option<RangeInclusive<i64>> {
        match self {
            GenCyl3xN | GenCyl5xN | LonTorus4xN => Some(-n..=-1),
            LonTorus1xN => Some(1..=n),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// What an induction step consumes: lift edges that must be on the path,
/// vertices whose images must be avoided, and the fixed lift endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookSpec {
    pub family: Family,
    pub m: i64,
    pub n: i64,
    pub edges: Vec<(LiftPoint, LiftPoint)>,
    /// Applies to every lift vertex except the base point.
    pub avoid: Option<ForbiddenImage>,
    pub endpoint: Option<LiftPoint>,
}

impl HookSpec {
    pub fn check(&self, pts: &[LiftPoint]) -> std::result::Result<(), String> {
        if let Some(e) = self.endpoint {
            if pts.last() != Some(&e) {
                return Err(format!(
                    "lift ends at {} instead of {e}",
                    pts.last().copied().unwrap_or_default()
                ));
            }
        }
        for &(u, v) in &self.edges {
            if lifted::find_edge(pts, u, v).is_none() {
                return Err(format!("lift edge {u}-{v} is missing"));
            }
        }
        if let Some(f) = &self.avoid {
            if let Some(p) = pts.iter().skip(1).find(|&&p| f.hits(p)) {
                return Err(format!("lift vertex {p} lands on an avoided square"));
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.avoid.is_none() && self.endpoint.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub family: Family,
    pub m: i64,
    pub n: i64,
    pub tour: Tour,
    pub checksum: String,
}

impl Fixture {
    pub fn new(family: Family, tour: Tour) -> Self {
        let spec = tour.spec();
        Fixture {
            family,
            m: spec.m(),
            n: spec.n(),
            checksum: tour_checksum(&tour),
            tour,
        }
    }

    pub fn spec(&self) -> BoardSpec {
        self.tour.spec()
    }

    /// Checks the tour against the family's class and hook.
    pub fn validate(&self) -> Result<()> {
        let spec = self.family.spec(self.m, self.n)?;
        if self.tour.spec() != spec {
            return Err(Error::InvalidTour(format!(
                "fixture tour lives on {}, not {spec}",
                self.tour.spec()
            )));
        }
        let class = classify(spec, &self.tour)?;
        if !matches_target(spec, class, self.family.target())? {
            return Err(Error::InvalidTour(format!(
                "class {class} is not {}",
                self.family.target()
            )));
        }
        if self.family.base_sizes().contains(&(self.m, self.n)) {
            oriented_lift(self.family, &self.tour)?;
        }
        if tour_checksum(&self.tour) != self.checksum {
            return Err(Error::InvalidTour("checksum mismatch".into()));
        }
        Ok(())
    }
}

/// The lift of `tour`, in the direction in which it satisfies the hook.
fn oriented_lift(family: Family, tour: &Tour) -> Result<Vec<LiftPoint>> {
    let spec = tour.spec();
    let hook = family.hook(spec.m(), spec.n());
    let mut why = String::new();
    for pts in lifts(spec, tour)? {
        match hook.check(&pts) {
            Ok(()) => return Ok(pts),
            Err(e) => why = e,
        }
    }
    Err(Error::HookViolation {
        family: family.name().into(),
        m: spec.m(),
        n: spec.n(),
        detail: why,
    })
}

fn base_problem(family: Family, m: i64, n: i64) -> Result<SearchProblem> {
    let spec = family.spec(m, n)?;
    let hook = family.hook(m, n);
    let mut edges = hook.edges.clone();
    if family == NullCylMx4 && (m, n) == (3, 4) {
        // this base also serves as the appended block, which is opened here
        edges.push((pt(0, 0), pt(1, -2)));
    }
    let constraints = LiftConstraints {
        edges,
        forbidden: hook.avoid.clone(),
        band: family.band(n),
    };
    Ok(SearchProblem::new(spec, family.target(), Mode::FindOne).with_lift_constraints(constraints))
}

/// Finds a base tour for `family` at `m x n` by constrained search.
///
/// Base sizes get the family's hook (and band) as search constraints; families
/// whose hooks do not by themselves keep the projection injective only accept
/// tours that survive [`LOOKAHEAD_STEPS`] induction steps. Standalone sizes
/// are plain class searches.
pub fn derive_base_case(family: Family, m: i64, n: i64, budget: Budget) -> Result<Fixture> {
    let is_base = family.base_sizes().contains(&(m, n));
    if !is_base && !family.standalone_sizes().contains(&(m, n)) && !(family == GenCylDelegated && family.admits(m, n)) {
        return Err(Error::InvalidProblem(format!("{m}x{n} is not a base size of {family}")));
    }
    let not_found = || Error::BaseCaseNotFound {
        family: family.name().into(),
        m,
        n,
    };
    if family == GenCylDelegated {
        return delegated_generator(m, n, budget)
            .map(|t| Fixture::new(family, t))
            .map_err(|e| match e {
                Error::BudgetExceeded { .. } | Error::Unsupported(_) => not_found(),
                e => e,
            });
    }
    let problem = if is_base {
        base_problem(family, m, n)?
    } else {
        SearchProblem::new(family.spec(m, n)?, family.target(), Mode::FindOne)
    };
    let hook = family.hook(m, n);
    let mut accept = |t: &Tour| {
        if !is_base {
            return true;
        }
        if !lifts(t.spec(), t).is_ok_and(|ls| ls.iter().any(|pts| hook.check(pts).is_ok())) {
            return false;
        }
        if !family.needs_lookahead() {
            return true;
        }
        let mut f = Fixture::new(family, t.clone());
        (0..LOOKAHEAD_STEPS).all(|_| match extend(family, &f) {
            Ok(next) => {
                f = next;
                true
            }
            Err(_) => false,
        })
    };
    let (out, _) = search::search(&problem, budget, SearchConfig::default(), &mut accept)?;
    match out {
        SearchOutcome::Found(t) => Ok(Fixture::new(family, t)),
        _ => Err(not_found()),
    }
}

type FixtureCache = Mutex<HashMap<(Family, i64, i64), Fixture>>;

fn fixture_cache() -> &'static FixtureCache {
    static CACHE: OnceLock<FixtureCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// [`derive_base_case`] with the default budget, memoized per process.
pub fn base_fixture(family: Family, m: i64, n: i64) -> Result<Fixture> {
    if let Some(f) = fixture_cache().lock().expect("cache lock").get(&(family, m, n)) {
        return Ok(f.clone());
    }
    let f = derive_base_case(family, m, n, Budget::default())?;
    fixture_cache()
        .lock()
        .expect("cache lock")
        .insert((family, m, n), f.clone());
    Ok(f)
}

fn base_lift(family: Family, m: i64, n: i64) -> Result<Vec<LiftPoint>> {
    oriented_lift(family, &base_fixture(family, m, n)?.tour)
}

/// Applies one induction step.
pub fn extend(family: Family, fixture: &Fixture) -> Result<Fixture> {
    let (m, n) = (fixture.m, fixture.n);
    if family != fixture.family {
        return Err(Error::InvalidProblem(format!(
            "fixture belongs to {}, not {family}",
            fixture.family
        )));
    }
    let Some((dm, dn)) = family.step() else {
        return Err(Error::NoInduction {
            family: family.name().into(),
            m,
            n,
        });
    };
    if family.base_for(m, n).is_none() {
        return Err(Error::NoInduction {
            family: family.name().into(),
            m,
            n,
        });
    }
    let mut pts = oriented_lift(family, &fixture.tour)?;
    let invalid = |detail: String| Error::StepInvalid {
        family: family.name().into(),
        detail,
    };
    let e = |a: i64, b: i64| pt(a, b);
    match family {
        NullCylMx1 => {
            let h = m / 2;
            replace_edge(
                &mut pts,
                &[e(m - 2, -h + 1), e(m, -h), e(m + 1, -h + 2), e(m - 1, -h + 3)],
            )
        }
        NullCylMx2 => {
            let p = if m % 2 == 0 { m - 1 } else { m };
            replace_edge(
                &mut pts,
                &[
                    e(m - 1, (5 - p) / 2),
                    e(m + 1, (3 - p) / 2),
                    e(m, (7 - p) / 2),
                    e(m - 2, (9 - p) / 2),
                ],
            )
            .and_then(|_| {
                replace_edge(
                    &mut pts,
                    &[
                        e(m - 1, (p - 3) / 2),
                        e(m + 1, (p - 1) / 2),
                        e(m, (p - 5) / 2),
                        e(m - 2, (p - 7) / 2),
                    ],
                )
            })
        }
        NullCylMx4 => {
            let frame = base_lift(NullCylMx4, 3, 4)?;
            // open the frame cycle at (0,0)-(1,-2) into a path between them
            let k = frame.len();
            let open: Vec<LiftPoint> = if frame[1] == e(1, -2) {
                frame.iter().rev().take(k - 1).copied().collect()
            } else if frame[k - 2] == e(1, -2) {
                frame[..k - 1].to_vec()
            } else {
                return Err(invalid("block frame lacks (0,0)-(1,-2)".into()));
            };
            let mut via = vec![e(m - 2, -1)];
            via.extend(translate(&open, m, 0));
            via.push(e(m - 1, -3));
            replace_edge(&mut pts, &via)
        }
        NullCyl4xN => [
            [e(0, -n + 1), e(1, -n - 1), e(3, -n), e(2, -n + 2)],
            [e(1, -n + 1), e(0, -n - 1), e(2, -n), e(3, -n + 2)],
            [e(0, n - 1), e(1, n + 1), e(3, n + 2), e(2, n)],
            [e(1, n - 1), e(0, n + 1), e(2, n + 2), e(3, n)],
        ]
        .iter()
        .try_for_each(|via| replace_edge(&mut pts, via)),
        GenCylMx1 => replace_edge(
            &mut pts,
            &[
                e(m - 1, (3 - m) / 2),
                e(m + 1, (1 - m) / 2),
                e(m, (-m - 3) / 2),
                e(m - 2, (-m - 1) / 2),
            ],
        ),
        GenCylMx2 => replace_edge(&mut pts, &[e(m - 1, 2), e(m + 1, 1), e(m, -1), e(m - 2, 0)])
            .and_then(|_| replace_edge(&mut pts, &[e(m - 1, 1), e(m + 1, 2), e(m, 0), e(m - 2, -1)])),
        GenCylMx3 => {
            let block = frames::column_block_path().ok_or_else(|| invalid("no R(4,3) block path".into()))?;
            let mut via = vec![e(m - 1, 1)];
            via.extend(block.iter().map(|s| e(m + s.a, 1 + s.b)));
            via.push(e(m - 2, 3));
            replace_edge(&mut pts, &via)
        }
        GenCylMx4 => splice_block(&mut pts, m),
        GenCyl3xN | GenCyl5xN | LonTorus4xN => {
            let unit = base_lift(family, family.base_sizes()[0].0, 4)?;
            concat(&mut pts, &translate(&unit, 0, -n))
        }
        LonTorus1xN => concat(&mut pts, &[e(0, n), e(2, n + 1), e(0, n + 2)]),
        LonTorus2xN => concat(
            &mut pts,
            &[e(0, -n), e(1, -n + 2), e(3, -n + 1), e(2, -n - 1), e(0, -n - 2)],
        ),
        NullCylMx3 | NullCyl3xN | NullTorusSmall | GenCylDelegated => unreachable!("no step"),
    }
    .map_err(invalid)?;

    let (m2, n2) = (m + dm, n + dn);
    let spec = family.spec(m2, n2)?;
    let tour = tour_from_lift(spec, &pts).map_err(|e| invalid(e.to_string()))?;
    let class = classify(spec, &tour)?;
    if !matches_target(spec, class, family.target())? {
        return Err(invalid(format!("result has class {class}")));
    }
    family.hook(m2, n2).check(&pts).map_err(invalid)?;
    Ok(Fixture::new(family, tour))
}

/// Replaces the two hook edges at column `m` by a two-path cover of the
/// `3 x 4` block on columns `m..m+3`.
fn splice_block(pts: &mut Vec<LiftPoint>, m: i64) -> std::result::Result<(), String> {
    let (a, b, c, d) = (pt(m - 1, 0), pt(m - 2, 2), pt(m - 2, 0), pt(m - 1, 2));
    let (i1, _) = lifted::find_edge(pts, a, b).ok_or("hook (m-1,0)-(m-2,2) missing")?;
    let (i2, _) = lifted::find_edge(pts, c, d).ok_or("hook (m-2,0)-(m-1,2) missing")?;
    let (i, j) = (i1.min(i2), i1.max(i2));
    let (x, y, z, w) = (pts[i], pts[i + 1], pts[j], pts[j + 1]);
    // old endpoint -> block entry, in block-local coordinates
    let entry = |p: LiftPoint| -> Square {
        match (p.a - m, p.b) {
            (-2, 0) => Square::new(0, 1),
            (-1, 0) => Square::new(1, 1),
            (-2, 2) => Square::new(0, 3),
            _ => Square::new(1, 3),
        }
    };
    let required = [
        (Square::new(2, 0), Square::new(1, 2)),
        (Square::new(1, 0), Square::new(2, 2)),
    ];
    let to_lift = |s: &Square| pt(m + s.a, s.b);
    let s1 = &pts[..=i];
    let s2 = &pts[i + 1..=j];
    let s3 = &pts[j + 1..];
    let mut out = None;
    if let Some([p, q]) = frames::two_path_cover(3, 4, [(entry(x), entry(y)), (entry(z), entry(w))], &required) {
        let mut v = s1.to_vec();
        v.extend(p.iter().map(to_lift));
        v.extend_from_slice(s2);
        v.extend(q.iter().map(to_lift));
        v.extend_from_slice(s3);
        out = Some(v);
    } else if let Some([p, q]) = frames::two_path_cover(3, 4, [(entry(x), entry(z)), (entry(y), entry(w))], &required) {
        let mut v = s1.to_vec();
        v.extend(p.iter().map(to_lift));
        v.extend(s2.iter().rev());
        v.extend(q.iter().map(to_lift));
        v.extend_from_slice(s3);
        out = Some(v);
    }
    *pts = out.ok_or("no two-path cover of the block joins the hook ends")?;
    Ok(())
}

/// Extends from the nearest base case to `m x n`.
pub fn family_tour(family: Family, m: i64, n: i64) -> Result<Tour> {
    if family == GenCylDelegated {
        return base_fixture(family, m, n).map(|f| f.tour);
    }
    if family.standalone_sizes().contains(&(m, n)) && family.base_for(m, n).is_none() {
        return base_fixture(family, m, n).map(|f| f.tour);
    }
    let ((bm, bn), steps) = family
        .base_for(m, n)
        .ok_or_else(|| Error::Unsupported(format!("{family} does not cover {m}x{n}")))?;
    let mut f = base_fixture(family, bm, bn)?;
    for _ in 0..steps {
        f = extend(family, &f)?;
    }
    Ok(f.tour)
}

/// Open tour on `R(m,n)` from `(0,0)` to `(1,n-2)`, closed on the cylinder by
/// the wrapping jump `(-1,2)`.
fn delegated_generator(m: i64, n: i64, budget: Budget) -> Result<Tour> {
    let reg = BoardSpec::regular(m, n)?;
    let (out, _) = open_search(
        reg,
        Square::new(0, 0),
        Square::new(1, n - 2),
        &Default::default(),
        budget,
        SearchConfig::default(),
    )?;
    let open = match out {
        SearchOutcome::Found(t) => t,
        SearchOutcome::BudgetExceeded { nodes, ms } => return Err(Error::BudgetExceeded { nodes, ms }),
        _ => {
            return Err(Error::Unsupported(format!(
                "no open tour on {reg} between (0,0) and (1,{})",
                n - 2
            )))
        }
    };
    let cyl = BoardSpec::cylinder(m, n)?;
    let mut jumps = open.jumps().to_vec();
    jumps.push(DirectedJump::new(
        Square::new(1, n - 2),
        KnightPair::new(-1, 2).expect("knight pair"),
    ));
    Tour::new(cyl, Square::new(0, 0), jumps, true)
}

fn searched(spec: BoardSpec, target: ClassTarget, budget: Budget) -> Result<Tour> {
    match find_tour(&SearchProblem::new(spec, target, Mode::FindOne), budget)? {
        SearchOutcome::Found(t) => Ok(t),
        SearchOutcome::BudgetExceeded { nodes, ms } => Err(Error::BudgetExceeded { nodes, ms }),
        _ => Err(Error::Unsupported(format!("no {target} tour on {spec}"))),
    }
}

/// A closed tour of `R(m,n)` reinterpreted on `spec`.
fn regular_on(spec: BoardSpec, budget: Budget) -> Result<Tour> {
    searched(spec.with_topology(Topology::Regular), ClassTarget::Any, budget)?.on_board(spec)
}

fn cyl_null(m: i64, n: i64, budget: Budget) -> Result<Tour> {
    let spec = BoardSpec::cylinder(m, n)?;
    if !cyl_null_predicate(m, n) {
        return Err(Error::Unsupported(format!("{spec} has no nullhomotopic tour")));
    }
    match (m, n) {
        (1, 1) => Tour::empty(spec),
        (_, 1) => family_tour(NullCylMx1, m, n),
        (_, 2) => family_tour(NullCylMx2, m, n),
        (_, 3) if m <= 8 => family_tour(NullCylMx3, m, n),
        (_, 3) => regular_on(spec, budget),
        (3, _) if n <= 8 => family_tour(NullCyl3xN, m, n),
        (3, _) => regular_on(spec, budget),
        (_, 4) => family_tour(NullCylMx4, m, n),
        (4, _) => family_tour(NullCyl4xN, m, n),
        _ => regular_on(spec, budget),
    }
}

fn cyl_gen(m: i64, n: i64, budget: Budget) -> Result<Tour> {
    let spec = BoardSpec::cylinder(m, n)?;
    if !cyl_gen_predicate(m, n) {
        return Err(Error::Unsupported(format!("{spec} has no generator tour")));
    }
    match (m, n) {
        (_, 1) => family_tour(GenCylMx1, m, n),
        (_, 2) => family_tour(GenCylMx2, m, n),
        (_, 3) => family_tour(GenCylMx3, m, n),
        (3, _) => family_tour(GenCyl3xN, m, n),
        (_, 4) => family_tour(GenCylMx4, m, n),
        (5, _) if n == 5 || n % 2 == 0 => family_tour(GenCyl5xN, m, n),
        _ => delegated_generator(m, n, budget),
    }
}

fn torus_null(m: i64, n: i64, budget: Budget) -> Result<Tour> {
    let spec = BoardSpec::torus(m, n)?;
    if !tori_null_predicate(m, n) {
        return Err(Error::Unsupported(format!("{spec} has no nullhomotopic tour")));
    }
    if (m, n) == (1, 1) {
        return Tour::empty(spec);
    }
    if cyl_null_predicate(m, n) {
        return cyl_null(m, n, budget)?.on_board(spec);
    }
    if cyl_null_predicate(n, m) {
        return cyl_null(n, m, budget)?.on_board(BoardSpec::torus(n, m)?)?.transposed();
    }
    if NullTorusSmall.admits(m, n) {
        return family_tour(NullTorusSmall, m, n);
    }
    family_tour(NullTorusSmall, n, m)?.transposed()
}

fn torus_lon(m: i64, n: i64, budget: Budget) -> Result<Tour> {
    let spec = BoardSpec::torus(m, n)?;
    if !torus_lon_predicate(m, n) {
        return Err(Error::Unsupported(format!("{spec} has no longitude tour")));
    }
    if cyl_gen_predicate(m, n) {
        return cyl_gen(m, n, budget)?.on_board(spec);
    }
    match m {
        1 => family_tour(LonTorus1xN, m, n),
        2 => family_tour(LonTorus2xN, m, n),
        _ => family_tour(LonTorus4xN, m, n),
    }
}

/// Builds a closed tour of the requested class, by induction where a family
/// covers the board and by search on the regular board otherwise.
pub fn construct(spec: BoardSpec, target: ClassTarget, budget: Budget) -> Result<Tour> {
    target.check_topology(spec.topology())?;
    let (m, n) = (spec.m(), spec.n());
    let target = match target {
        ClassTarget::Exact(c) if c.is_identity() => ClassTarget::Identity,
        ClassTarget::Exact(HomotopyClass::Cylinder(1 | -1)) => ClassTarget::Generator,
        ClassTarget::Exact(HomotopyClass::Torus(0, 1 | -1)) => ClassTarget::Longitude,
        ClassTarget::Exact(c) => return Err(Error::Unsupported(format!("no construction realizes {c}"))),
        t => t,
    };
    let tour = match (spec.topology(), target) {
        (Topology::Regular, _) => {
            if m * n == 1 {
                Tour::empty(spec)?
            } else if schwenk_predicate(m, n) {
                searched(spec, ClassTarget::Any, budget)?
            } else {
                return Err(Error::Unsupported(format!("{spec} has no closed tour")));
            }
        }
        (Topology::Cylinder, ClassTarget::Identity) => cyl_null(m, n, budget)?,
        (Topology::Cylinder, ClassTarget::Generator) => cyl_gen(m, n, budget)?,
        (Topology::Cylinder, _) => {
            if cyl_null_predicate(m, n) {
                cyl_null(m, n, budget)?
            } else if cyl_gen_predicate(m, n) {
                cyl_gen(m, n, budget)?
            } else if watkins_predicate(m, n) {
                searched(spec, ClassTarget::Any, budget)?
            } else {
                return Err(Error::Unsupported(format!("{spec} has no closed tour")));
            }
        }
        (Topology::Torus, ClassTarget::Identity) => torus_null(m, n, budget)?,
        (Topology::Torus, ClassTarget::Longitude) => torus_lon(m, n, budget)?,
        (Topology::Torus, _) => {
            if tori_null_predicate(m, n) {
                torus_null(m, n, budget)?
            } else if torus_lon_predicate(m, n) {
                torus_lon(m, n, budget)?
            } else {
                searched(spec, ClassTarget::Any, budget)?
            }
        }
    };
    debug_assert_eq!(tour.spec(), spec);
    Ok(tour)
}

/// Canonical edge of the board edge between two lift vertices.
pub fn lift_edge_id(spec: BoardSpec, u: LiftPoint, v: LiftPoint) -> Option<crate::board::EdgeId> {
    let pair = KnightPair::new(v.a - u.a, v.b - u.b)?;
    canonical_edge(spec, DirectedJump::new(u.project(spec), pair)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn stated_hooks() {
        let h = NullCylMx1.hook(4, 1);
        assert_eq!(h.edges, vec![(pt(2, -1), pt(3, 1))]);
        let h = GenCylMx1.hook(3, 1);
        assert_eq!(h.edges, vec![(pt(2, 0), pt(1, -2))]);
        for f in Family::ALL {
            for &(m, n) in f.base_sizes() {
                for (u, v) in f.hook(m, n).edges {
                    assert!(KnightPair::new(v.a - u.a, v.b - u.b).is_some(), "{f} {m}x{n}");
                }
            }
        }
    }

    #[test]
    fn base_selection() {
        assert_eq!(GenCyl3xN.base_for(3, 36), Some(((3, 4), 8)));
        assert_eq!(GenCyl3xN.base_for(3, 15), Some(((3, 7), 2)));
        assert_eq!(NullCylMx2.base_for(4, 2), None);
        assert!(!NullCylMx2.admits(4, 2));
        assert!(GenCyl3xN.admits(3, 5) && GenCyl3xN.base_for(3, 5).is_none());
        assert!(GenCylDelegated.admits(5, 7) && !GenCylDelegated.admits(5, 5) && !GenCylDelegated.admits(6, 5));
    }
}
