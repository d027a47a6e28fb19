//! Serialization, fixture storage, rendering and the command line.

pub mod cli;
pub mod document;
pub mod render;
pub mod store;

pub use document::{checksum, deserialize, serialize, tour_checksum, TourDocument};
pub use render::{render, RenderMode, RenderOptions};
pub use store::FixtureStore;
