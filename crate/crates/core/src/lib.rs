//! Critical rank-one approximations of tensors under the Bombieri-Weyl form.
//!
//! The crate covers:
//!
//! * [`tensor`]: symmetric and dense complex tensors, the Bombieri-Weyl
//!   bilinear form, rank-one terms and tangent-space residuals;
//! * [`critical`]: search and certification of critical rank-one
//!   approximations (SVD for matrices, shifted power iteration for symmetric
//!   tensors, ALS for general tensors);
//! * [`deflation`]: iterated subtraction chains, flattening ranks, Cayley's
//!   2×2×2 hyperdeterminant and the rank-increase experiment;
//! * [`locus`]: weakly orthogonally decomposable tensors, isotropic frames and
//!   the explicit 2×2×2 data-locus components;
//! * [`stabilization`]: exact generic ranks and stabilization steps of the
//!   data-locus chain for symmetric tensors.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below fix the common case.

pub mod combinatorics;
pub mod critical;
pub mod deflation;
pub mod error;
pub mod io;
pub mod linalg;
pub mod locus;
pub mod rng;
pub mod scalar;
pub mod stabilization;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub use critical::{CriticalPoint, SolverConfig, Source};
pub use deflation::{DeflationChain, Policy, RankReport, Termination};
pub use tensor::{DenseTensor, LinearForm, RankOneTerm, SymmetricTensor, Tensor};

/// Default relative tolerance for predicates.
pub const DEFAULT_TOL: f64 = 1e-10;

pub type ScalarF64 = Scalar<f64>;
pub type LinearFormF64 = LinearForm<f64>;
pub type SymmetricTensorF64 = SymmetricTensor<f64>;
pub type DenseTensorF64 = DenseTensor<f64>;
pub type TensorF64 = Tensor<f64>;
pub type RankOneTermF64 = RankOneTerm<f64>;
pub type CriticalPointF64 = CriticalPoint<f64>;

pub type ScalarF32 = Scalar<f32>;
pub type LinearFormF32 = LinearForm<f32>;
pub type SymmetricTensorF32 = SymmetricTensor<f32>;
pub type DenseTensorF32 = DenseTensor<f32>;
pub type TensorF32 = Tensor<f32>;
