//! Critical rank-one approximations: search and certification.
//!
//! A rank-one `x` is critical for `T` when `T − x` is orthogonal, under the
//! Bombieri-Weyl form, to the tangent space of the rank-one cone at `x`.
//! Every point returned by a search here has been re-checked with the
//! matching `verify_critical_*` predicate.

mod matrix;
mod segre;
mod symmetric;
mod verify;

pub use matrix::{matrix_critical_points, RANK_TOL};
pub use segre::segre_critical_search;
pub use symmetric::symmetric_critical_search;
pub use verify::{verify_critical, verify_critical_dense, verify_critical_symmetric};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lex_cmp, Real};
use crate::tensor::{RankOneTerm, Tensor};

/// Projective distance below which two rank-one terms are the same point.
pub const DEDUP_TOL: f64 = 1e-6;

/// Which routine produced a critical point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    #[serde(rename = "SVD")]
    Svd,
    PowerIteration,
    #[serde(rename = "ALS")]
    Als,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint<F> {
    pub term: RankOneTerm<F>,
    /// Normalized tangent residual of `T − term` (see `verify_critical_*`).
    pub residual_norm: F,
    /// `‖T − term‖²` in the Hermitian norm (the Euclidean one for real `T`).
    pub objective: F,
    pub scale: Complex<F>,
    pub source: Source,
    /// Index of the start that produced the point, if any.
    pub start: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Certification tolerance on the normalized tangent residual.
    pub tol: f64,
    pub num_starts: usize,
    pub seed: u64,
    /// Shift for the symmetric power iteration; `None` means `1 + ‖T‖`.
    pub shift: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 2000,
            tol: crate::DEFAULT_TOL,
            num_starts: 32,
            seed: 0,
            shift: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidArgument("max_iters must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument("tol must be > 0".into()));
        }
        if self.num_starts < 1 {
            return Err(Error::InvalidArgument("num_starts must be >= 1".into()));
        }
        if let Some(s) = self.shift {
            if !s.is_finite() {
                return Err(Error::InvalidArgument("shift must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_starts(mut self, num_starts: usize) -> Self {
        self.num_starts = num_starts;
        self
    }
}

/// Critical search dispatched on the tensor kind: SVD for matrices, ALS for
/// higher-order dense tensors, shifted power iteration for symmetric ones.
pub fn critical_search<F: Real>(t: &Tensor<F>, cfg: &SolverConfig) -> Result<Vec<CriticalPoint<F>>> {
    match t {
        Tensor::Dense(d) if d.order() == 2 => matrix_critical_points(d),
        Tensor::Dense(d) => segre_critical_search(d, cfg),
        Tensor::Symmetric(s) => symmetric_critical_search(s, cfg),
    }
}

/// Materialized entries used for deduplication and tie-breaking.
fn term_entries<F: Real>(term: &RankOneTerm<F>) -> Vec<Complex<F>> {
    match term {
        RankOneTerm::Segre { .. } => term.to_dense().map(|t| t.entries().to_vec()),
        RankOneTerm::Veronese { .. } => term.to_symmetric().map(|t| {
            // weight by √C(d,α) so the Euclidean distance is the BW one
            t.coeffs()
                .iter()
                .enumerate()
                .map(|(i, z)| z * t.weight(i).sqrt())
                .collect()
        }),
    }
    .unwrap_or_default()
}

/// Deduplicates candidates in start order and sorts by objective, ties broken
/// by the lexicographic order of the term entries.
pub(crate) fn merge_candidates<F: Real>(
    candidates: Vec<Option<CriticalPoint<F>>>,
) -> Vec<CriticalPoint<F>> {
    let tol = F::lit(DEDUP_TOL);
    let mut kept: Vec<(CriticalPoint<F>, Vec<Complex<F>>, F)> = Vec::new();
    for cp in candidates.into_iter().flatten() {
        let entries = term_entries(&cp.term);
        let norm = entries.iter().map(|z| z.norm_sqr()).sum::<F>().sqrt();
        let dup = kept.iter().any(|(_, e, n)| {
            let dist = e
                .iter()
                .zip(&entries)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<F>()
                .sqrt();
            dist <= tol * norm.max(*n)
        });
        if !dup {
            kept.push((cp, entries, norm));
        }
    }
    kept.sort_by(|a, b| {
        a.0.objective
            .partial_cmp(&b.0.objective)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| lex_cmp(&a.1, &b.1))
    });
    kept.into_iter().map(|(cp, _, _)| cp).collect()
}

/// Flips the sign of `v` so that its largest-magnitude coordinate is
/// positive; returns whether it flipped.
pub(crate) fn canonical_sign<F: Real>(v: &mut [F]) -> bool {
    let pivot = v
        .iter()
        .enumerate()
        .fold((0, F::zero()), |best, (i, x)| {
            // strict inequality with a small margin keeps the choice stable
            if x.abs() > best.1 * (F::one() + F::lit(1e-9)) {
                (i, x.abs())
            } else {
                best
            }
        })
        .0;
    if v.get(pivot).is_some_and(|x| *x < F::zero()) {
        v.iter_mut().for_each(|x| *x = -*x);
        true
    } else {
        false
    }
}

pub(crate) fn unit<F: Real>(v: &[F]) -> Option<Vec<F>> {
    let n = v.iter().map(|x| *x * *x).sum::<F>().sqrt();
    if n > F::zero() && n.is_finite() {
        Some(v.iter().map(|x| *x / n).collect())
    } else {
        None
    }
}

pub(crate) fn random_unit<F: Real, R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<F> {
    loop {
        let v: Vec<F> = (0..n)
            .map(|_| F::lit(rng.sample::<f64, _>(rand_distr::StandardNormal)))
            .collect();
        if let Some(u) = unit(&v) {
            return u;
        }
    }
}
