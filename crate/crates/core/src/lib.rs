//! Cohomology of vertex-weighted graphs.

pub mod cohomology;
pub mod error;
pub mod forest;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod orientation;
pub mod tropical;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
