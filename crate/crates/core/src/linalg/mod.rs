//! Exact linear algebra over the rationals.

pub mod group;
pub mod map;
pub mod scalar;
pub mod space;
pub mod subspace;
pub mod svec;
pub mod tensor;

pub use group::{Coinvariants, GroupAction, Perm};
pub use map::LinearMap;
pub use scalar::Q;
pub use space::{Label, VectorSpace};
pub use subspace::Subspace;
pub use svec::SVec;
