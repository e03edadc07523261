//! Rank increase under best-fit deflation of 2×2×2 real tensors.
//!
//! A generic real 2×2×2 tensor with Δ > 0 has real rank 2, yet subtracting
//! its best rank-one approximation leaves a residual of real rank 3. The
//! residual is normal to the Segre cone at the subtracted point, so it lies
//! on the hyperdeterminant hypersurface: Δ vanishes and the rank-3 orbit is
//! the tangential one, recognised by full flattening ranks.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hyperdet::{delta_sign, delta_sign_with, DeltaSign};
use super::rank::RankReport;
use crate::critical::{segre_critical_search, SolverConfig};
use crate::error::{Error, Result};
use crate::rng::{child_seed, stream};
use crate::tensor::{DenseTensor, Tensor};

/// Zero band for Δ relative to `‖T‖⁴`.
pub const SC10_DELTA_TOL: f64 = 1e-10;

/// How trial tensors are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sc10Sampling {
    /// Gaussian entries, rejection-sampled until Δ > 0.
    Generic,
    /// `a·e₀⊗e₀⊗e₀ + b·e₁⊗e₁⊗e₁` with Gaussian `a, b`.
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sc10Record {
    pub trial: usize,
    pub seed: u64,
    pub delta_sign_before: DeltaSign,
    /// `None` when no certified critical point was found.
    pub delta_sign_after: Option<DeltaSign>,
    /// Real rank of the residual from Δ and the flattening ranks.
    pub real_rank_after: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Sc10Summary {
    pub negative: usize,
    pub positive: usize,
    pub zero_at_tol: usize,
    pub failed: usize,
    /// Residuals of real rank 3, whatever the sign of Δ.
    pub rank_three: usize,
    pub records: Vec<Sc10Record>,
}

impl Sc10Summary {
    /// CSV with columns
    /// `trial,seed,delta_sign_before,delta_sign_after,real_rank_after`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,seed,delta_sign_before,delta_sign_after,real_rank_after\n");
        for r in &self.records {
            let after = r
                .delta_sign_after
                .map(|s| s.to_string())
                .unwrap_or_else(|| "Failed".into());
            let rank = r.real_rank_after.map(|k| k.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.trial, r.seed, r.delta_sign_before, after, rank
            ));
        }
        out
    }
}

/// Draws the trial tensor for `seed`.
pub fn sc10_sample(seed: u64, sampling: Sc10Sampling) -> DenseTensor<f64> {
    let mut rng = stream(seed, 0);
    loop {
        let t = match sampling {
            Sc10Sampling::Generic => {
                let v: Vec<f64> = (0..8).map(|_| rng.sample(StandardNormal)).collect();
                DenseTensor::from_real(vec![2, 2, 2], &v).expect("2x2x2")
            }
            Sc10Sampling::Diagonal => {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                DenseTensor::from_real(vec![2, 2, 2], &[a, 0., 0., 0., 0., 0., 0., b]).expect("2x2x2")
            }
        };
        if matches!(delta_sign(&t, SC10_DELTA_TOL), Ok(DeltaSign::Positive)) {
            return t;
        }
    }
}

/// One trial: sample, subtract the best-fit critical rank-one term, record
/// the sign of Δ and the real rank of the residual.
pub fn sc10_trial(trial: usize, seed: u64, sampling: Sc10Sampling) -> Sc10Record {
    let t = sc10_sample(seed, sampling);
    let cfg = SolverConfig::default().with_seed(seed).with_starts(16);
    let report = segre_critical_search(&t, &cfg)
        .ok()
        .and_then(|pts| pts.into_iter().next())
        .and_then(|best| {
            let residual = t.sub(&best.term.to_dense().ok()?).ok()?;
            // thresholds stay relative to the trial tensor, not the residual
            let mut r = RankReport::for_tensor(&Tensor::Dense(residual.clone()), t.norm());
            r.hyperdet_sign = Some(delta_sign_with(&residual, SC10_DELTA_TOL * t.norm().powi(4)).ok()?);
            Some(r)
        });
    Sc10Record {
        trial,
        seed,
        delta_sign_before: DeltaSign::Positive,
        delta_sign_after: report.as_ref().and_then(|r| r.hyperdet_sign),
        real_rank_after: report.as_ref().and_then(|r| r.real_rank_222()),
    }
}

/// Runs `num_trials` independent trials; trial `i` uses seed
/// `child_seed(seed, i)`, so the records do not depend on thread count.
pub fn sc10_experiment(num_trials: usize, seed: u64, sampling: Sc10Sampling) -> Result<Sc10Summary> {
    if num_trials < 1 {
        return Err(Error::InvalidArgument("num_trials must be >= 1".into()));
    }
    let records: Vec<Sc10Record> = (0..num_trials)
        .into_par_iter()
        .map(|i| sc10_trial(i, child_seed(seed, i as u64), sampling))
        .collect();
    let mut summary = Sc10Summary::default();
    for r in &records {
        match r.delta_sign_after {
            Some(DeltaSign::Negative) => summary.negative += 1,
            Some(DeltaSign::Positive) => summary.positive += 1,
            Some(DeltaSign::Zero) => summary.zero_at_tol += 1,
            None => summary.failed += 1,
        }
        if r.real_rank_after == Some(3) {
            summary.rank_three += 1;
        }
    }
    summary.records = records;
    Ok(summary)
}
