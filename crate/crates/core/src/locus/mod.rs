//! Weakly orthogonally decomposable tensors, isotropic frames and the
//! explicit 2×2×2 data-locus components.
//!
//! Membership in a data locus is decided from a decomposition certificate
//! ([`OrthoDecomposition`]); recovering a decomposition from coefficients is
//! out of scope.

mod dl2;
mod frame;
mod normal;
mod odeco;
mod sample;

pub use dl2::{
    dl2_membership_222, dl2_quadric, predicted_components, rank_two_sample_222, Dl2Membership,
    DL2_COMPONENTS, DL2_QUADRICS, QUADRIC_SLOT,
};
pub use frame::{canonical_isotropic_vectors, isotropic_frame, IsotropicFrame};
pub use normal::normal_space_membership;
pub use odeco::{odeco_check, OdecoClass, OdecoTerms, OrthoDecomposition};
pub use sample::{
    dl_sample, dl_sample_decomposed, dl_sample_with_span, isotropic_span_criticality,
    isotropic_span_max_residual, weakly_odeco_symmetric, SPAN_CRITICALITY_TOL,
};
