//! Knight's tours on rectangular boards, cylinders and tori, classified by
//! the homotopy class of the closed tour on the surface.

pub mod board;
pub mod construct;
pub mod error;
pub mod lift;
pub mod search;
pub mod shell;
pub mod theorems;
pub mod tour;

pub use board::{BoardSpec, DirectedJump, EdgeId, KnightPair, Square, Topology};
pub use error::{Error, Result};
pub use lift::{classify, lift_tour, ClassTarget, HomotopyClass, LiftPath, LiftPoint};
pub use search::{Budget, Mode, SearchOutcome, SearchProblem};
pub use tour::Tour;
