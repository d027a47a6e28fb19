//! Existence predicates and sweeps that confront them with evidence.

pub mod predicates;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::board::{BoardSpec, Topology};
use crate::construct::construct;
use crate::error::{Error, Result};
use crate::lift::{classify, matches_target, parity_obstruction, ClassTarget, Obstruction};
use crate::search::{find_tour, prove_nonexistence, Budget, Mode, SearchOutcome, SearchProblem};
use crate::shell::document::tour_checksum;
use crate::tour::Tour;

pub use predicates::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    Schwenk,
    Watkins,
    CylNull,
    ToriNull,
    CylGen,
    TorusLon,
}

impl Source {
    pub const ALL: [Source; 6] = [
        Source::Schwenk,
        Source::Watkins,
        Source::CylNull,
        Source::ToriNull,
        Source::CylGen,
        Source::TorusLon,
    ];

    pub fn topology(self) -> Topology {
        match self {
            Source::Schwenk => Topology::Regular,
            Source::Watkins | Source::CylNull | Source::CylGen => Topology::Cylinder,
            Source::ToriNull | Source::TorusLon => Topology::Torus,
        }
    }

    pub fn target(self) -> ClassTarget {
        match self {
            Source::Schwenk | Source::Watkins => ClassTarget::Any,
            Source::CylNull | Source::ToriNull => ClassTarget::Identity,
            Source::CylGen => ClassTarget::Generator,
            Source::TorusLon => ClassTarget::Longitude,
        }
    }

    pub fn predicate(self, m: i64, n: i64) -> bool {
        match self {
            Source::Schwenk => m * n == 1 || schwenk_predicate(m, n),
            Source::Watkins => watkins_predicate(m, n),
            Source::CylNull => cyl_null_predicate(m, n),
            Source::ToriNull => tori_null_predicate(m, n),
            Source::CylGen => cyl_gen_predicate(m, n),
            Source::TorusLon => torus_lon_predicate(m, n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Source::Schwenk => "schwenk",
            Source::Watkins => "watkins",
            Source::CylNull => "cyl-null",
            Source::ToriNull => "tori-null",
            Source::CylGen => "cyl-gen",
            Source::TorusLon => "torus-lon",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Source::ALL
            .into_iter()
            .find(|x| x.name() == norm || format!("{x:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown source `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claim {
    pub spec: BoardSpec,
    pub target: ClassTarget,
    pub predicted: bool,
    pub source: Source,
}

impl Claim {
    pub fn new(source: Source, m: i64, n: i64) -> Result<Claim> {
        Ok(Claim {
            spec: BoardSpec::new(source.topology(), m, n)?,
            target: source.target(),
            predicted: source.predicate(m, n),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    FoundTour(String),
    ExhaustedNone,
    ParityBlocked,
    Skipped(String),
}

impl Evidence {
    pub fn is_skipped(&self) -> bool {
        matches!(self, Evidence::Skipped(_))
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::FoundTour(c) => write!(f, "tour {}", &c[..c.len().min(12)]),
            Evidence::ExhaustedNone => f.write_str("exhausted"),
            Evidence::ParityBlocked => f.write_str("parity"),
            Evidence::Skipped(r) => write!(f, "skipped: {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRow {
    pub claim: Claim,
    pub evidence: Evidence,
    /// False for skipped rows.
    pub agree: bool,
    pub ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SearchOnly,
    ConstructThenSearch,
}

/// Boards above this size are not searched exhaustively under
/// [`Method::SearchOnly`].
pub const SEARCH_ONLY_EXHAUSTIVE_LIMIT: i64 = 26;

fn regular_parity_blocked(spec: BoardSpec) -> bool {
    // a closed tour alternates colours, so it needs an even number of squares
    let s = spec.m() * spec.n();
    s > 1 && s % 2 == 1
}

fn check_found(claim: &Claim, tour: &Tour) -> Result<()> {
    if tour.spec() != claim.spec || !tour.is_closed() {
        return Err(Error::InvalidTour(format!(
            "evidence is not a closed tour on {}",
            claim.spec
        )));
    }
    if claim.spec.topology().is_surface() {
        let cls = classify(claim.spec, tour)?;
        if !matches_target(claim.spec, cls, claim.target)? {
            return Err(Error::InvalidTour(format!("evidence has class {cls}")));
        }
    }
    Ok(())
}

fn skipped(e: impl fmt::Display) -> Evidence {
    Evidence::Skipped(e.to_string())
}

/// Gathers evidence for one claim.
pub fn verify_claim(claim: &Claim, method: Method, budget: Budget) -> VerdictRow {
    let started = Instant::now();
    let spec = claim.spec;
    let found = |t: Tour| match check_found(claim, &t) {
        Ok(()) => Evidence::FoundTour(tour_checksum(&t)),
        Err(e) => skipped(e),
    };
    let evidence = if claim.predicted {
        let constructed = match method {
            Method::ConstructThenSearch => construct(spec, claim.target, budget).ok(),
            Method::SearchOnly => None,
        };
        match constructed {
            Some(t) => found(t),
            None => match find_tour(&SearchProblem::new(spec, claim.target, Mode::FindOne), budget) {
                Ok(SearchOutcome::Found(t)) => found(t),
                Ok(SearchOutcome::NoSolution) => Evidence::ExhaustedNone,
                Ok(other) => skipped(other),
                Err(e) => skipped(e),
            },
        }
    } else {
        let parity = if spec.topology().is_surface() {
            parity_obstruction(spec, claim.target).ok() == Some(Obstruction::Blocked)
        } else {
            regular_parity_blocked(spec)
        };
        if parity {
            Evidence::ParityBlocked
        } else if method == Method::SearchOnly && spec.m() * spec.n() > SEARCH_ONLY_EXHAUSTIVE_LIMIT {
            skipped("beyond exhaustive reach")
        } else {
            match prove_nonexistence(&SearchProblem::new(spec, claim.target, Mode::ProveNone), budget) {
                Ok(SearchOutcome::NoSolution) => Evidence::ExhaustedNone,
                Ok(SearchOutcome::Found(t)) => found(t),
                Ok(other) => skipped(other),
                Err(e) => skipped(e),
            }
        }
    };
    let agree = match &evidence {
        Evidence::Skipped(_) => false,
        Evidence::FoundTour(_) => claim.predicted,
        Evidence::ExhaustedNone | Evidence::ParityBlocked => !claim.predicted,
    };
    VerdictRow {
        claim: *claim,
        evidence,
        agree,
        ms: started.elapsed().as_millis() as u64,
    }
}

fn claims(source: Source, cells: &[(i64, i64)]) -> Result<Vec<Claim>> {
    cells.iter().map(|&(m, n)| Claim::new(source, m, n)).collect()
}

fn grid(m_range: RangeInclusive<i64>, n_range: RangeInclusive<i64>) -> Result<Vec<(i64, i64)>> {
    if m_range.is_empty() || n_range.is_empty() {
        return Err(Error::InvalidProblem("sweep ranges must be nonempty".into()));
    }
    Ok(m_range.flat_map(|m| n_range.clone().map(move |n| (m, n))).collect())
}

/// One row per `(m, n)` in row-major order.
pub fn verify_range(
    source: Source,
    m_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
    method: Method,
    budget: Budget,
) -> Result<Vec<VerdictRow>> {
    verify_cells(source, &grid(m_range, n_range)?, method, budget, 1)
}

/// Verifies an explicit cell list, fanning out over `jobs` worker threads.
/// Rows come back in the order of `cells` whatever the completion order.
pub fn verify_cells(
    source: Source,
    cells: &[(i64, i64)],
    method: Method,
    budget: Budget,
    jobs: usize,
) -> Result<Vec<VerdictRow>> {
    let claims = claims(source, cells)?;
    if jobs <= 1 {
        return Ok(claims.iter().map(|c| verify_claim(c, method, budget)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidProblem(e.to_string()))?;
    Ok(pool.install(|| claims.par_iter().map(|c| verify_claim(c, method, budget)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources_parse() {
        for s in Source::ALL {
            assert_eq!(s.name().parse::<Source>().unwrap(), s);
            assert_eq!(format!("{s:?}").parse::<Source>().unwrap(), s);
        }
    }

    #[test]
    fn watkins_negative_column() {
        let rows = verify_cells(
            Source::Watkins,
            &[(4, 2), (4, 4), (4, 6)],
            Method::SearchOnly,
            Budget::default(),
            1,
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        for r in rows {
            assert_eq!(r.evidence, Evidence::ExhaustedNone);
            assert!(r.agree);
        }
    }
}
