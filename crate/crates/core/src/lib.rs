//! Operads indexed by labeled graphs, their free constructions and inner cohomomorphisms,
//! together with the quadratic-algebra calculus they degenerate to.

pub mod acceptance;
pub mod collections;
pub mod error;
pub mod free;
pub mod graph;
pub mod labeling;
pub mod linalg;
pub mod operad_cohom;
pub mod palg;
pub mod quadratic;

pub use error::{Error, Result};
