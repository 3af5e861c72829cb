//! Monomial quiver algebras `kQ/I`: perfect paths, Gorenstein-projective
//! modules, singularity categories, gluing, and an exact homological oracle
//! to check all of it against.

pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod gluing;
pub mod gorenstein;
pub mod graded;
pub mod oracle;
pub mod perfection;
pub mod presentation;

pub use error::{Error, Result};
pub use presentation::{ArrowId, MonomialPresentation, Path, PathBasis, Quiver, VertexId};
