//! Deflation chains, rank indicators and the 2×2×2 hyperdeterminant.

mod chain;
mod hyperdet;
mod rank;
mod sc10;

pub use chain::{deflate, DeflationChain, DeflationStep, Policy, Termination, TERMINATION_TOL};
pub use hyperdet::{
    cayley_hyperdeterminant, coords_222, delta_sign, delta_sign_with, hyperdeterminant_222, DeltaSign,
    CAYLEY_TERMS,
};
pub use rank::{real_rank_222, RankReport};
pub use sc10::{
    sc10_experiment, sc10_sample, sc10_trial, Sc10Record, Sc10Sampling, Sc10Summary,
    SC10_DELTA_TOL,
};
