use thiserror::Error;

use crate::board::{DirectedJump, Topology};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("board dimensions must be positive, got {m}x{n}")]
    InvalidDimensions { m: i64, n: i64 },

    #[error("jump {0} leaves the board")]
    InvalidJump(DirectedJump),

    #[error("{0:?} boards have no covering surface to lift into")]
    NotASurface(Topology),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("target {target} does not apply to {topology:?} boards")]
    TargetTopologyMismatch { target: String, topology: Topology },

    #[error("invalid search problem: {0}")]
    InvalidProblem(String),

    #[error("no base case found for {family} at {m}x{n}")]
    BaseCaseNotFound { family: String, m: i64, n: i64 },

    #[error("fixture for {family} at {m}x{n} lacks its hook: {detail}")]
    HookViolation {
        family: String,
        m: i64,
        n: i64,
        detail: String,
    },

    #[error("induction step for {family} produced an invalid tour: {detail}")]
    StepInvalid { family: String, detail: String },

    #[error("{family} has no induction step from {m}x{n}")]
    NoInduction { family: String, m: i64, n: i64 },

    #[error("no tour of the requested class exists: {0}")]
    Unsupported(String),

    #[error("search budget exhausted after {nodes} nodes / {ms} ms")]
    BudgetExceeded { nodes: u64, ms: u64 },

    #[error("malformed tour document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
