//! Locating-total domination: verification, exact search, class
//! recognition and certified constructions meeting the two-thirds bounds.

pub mod construct;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod ltd;
pub mod recognize;
pub mod report;
pub mod structure;

pub use error::{LtdError, Result};
pub use graph::{Graph, VertexSet};
