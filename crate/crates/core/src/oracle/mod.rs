//! Exact homological algebra over the rationals, used as ground truth for
//! the combinatorial side of the crate.

pub mod covering;
pub mod homology;
pub mod linalg;
pub mod rep;

pub use homology::{
    hom_dim, hom_space, projective_cover, stable_hom_dim, syzygy, DimStatus, InjectiveDimensionProfile, Module, Oracle,
    ResolutionTrace, Termination,
};
pub use rep::{injective_rep, path_module_rep, projective_rep, regular_rep, simple_rep, Representation};
pub mod checks;

pub use checks::{
    crosscheck_classification, ext_dim, global_dimension, gorenstein_projective_test, injective_dimension_profile,
};

pub use covering::{tilting_check, verify_omega_t_ext_vanishing, Covering, TiltingCheck};

#[cfg(test)]
mod tests;
