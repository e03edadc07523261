use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::rank::RankReport;
use crate::critical::{critical_search, CriticalPoint, SolverConfig};
use crate::error::{Error, Result};
use crate::rng::{child_seed, stream};
use crate::scalar::Real;
use crate::tensor::Tensor;

/// Chains stop once the residual norm is at most this fraction of the
/// initial norm.
pub const TERMINATION_TOL: f64 = 1e-9;

/// How a step picks among the certified critical points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Smallest objective `‖T − x‖²`.
    BestFit,
    /// Uniform choice, seeded per step.
    Random(u64),
    /// The `k`-th point in objective order; fails when out of range.
    UserSelected(usize),
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::BestFit => write!(f, "best"),
            Policy::Random(s) => write!(f, "random:{s}"),
            Policy::UserSelected(k) => write!(f, "index:{k}"),
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    /// Parses `best`, `random`, `random:SEED` or `index:K`. A bare `random`
    /// gets seed 0.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown policy {s:?}"));
        match s.split_once(':') {
            None if s == "best" => Ok(Policy::BestFit),
            None if s == "random" => Ok(Policy::Random(0)),
            Some(("random", seed)) => seed.parse().map(Policy::Random).map_err(|_| bad()),
            Some(("index", k)) => k.parse().map(Policy::UserSelected).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Termination {
    ReachedZero,
    MaxSteps,
    NoCriticalPointFound,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Termination::ReachedZero => "ReachedZero",
            Termination::MaxSteps => "MaxSteps",
            Termination::NoCriticalPointFound => "NoCriticalPointFound",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeflationStep<F> {
    /// Norm of the tensor the step started from.
    pub norm_before: F,
    pub chosen: CriticalPoint<F>,
    /// Rank indicators of the residual after subtraction.
    pub rank: RankReport,
    pub norm_after: F,
    /// Number of distinct certified critical points offered to the policy.
    pub candidates: usize,
}

#[derive(Clone, Debug)]
pub struct DeflationChain<F> {
    pub steps: Vec<DeflationStep<F>>,
    pub termination: Termination,
    pub policy: Policy,
    pub initial_norm: F,
    pub initial_rank: RankReport,
    pub final_norm: F,
    pub residual: Tensor<F>,
}

impl<F: Real> PartialEq for DeflationChain<F> {
    fn eq(&self, o: &Self) -> bool {
        self.steps == o.steps
            && self.termination == o.termination
            && self.policy == o.policy
            && self.initial_norm == o.initial_norm
            && self.initial_rank == o.initial_rank
            && self.final_norm == o.final_norm
            && self.residual == o.residual
    }
}

impl<F: Real> DeflationChain<F> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Runs `T → T − x → …` with `x` chosen by `policy` among the certified
/// critical points of the current residual.
///
/// Step `k` searches with seed `child_seed(cfg.seed, k)`. The chain stops
/// when the residual norm drops to [`TERMINATION_TOL`] times the initial
/// norm, after `max_steps` subtractions, or when a search returns nothing.
pub fn deflate<F: Real>(
    t: &Tensor<F>,
    policy: Policy,
    cfg: &SolverConfig,
    max_steps: usize,
) -> Result<DeflationChain<F>> {
    if max_steps < 1 {
        return Err(Error::InvalidArgument("max_steps must be >= 1".into()));
    }
    cfg.validate()?;
    let initial_norm = t.norm();
    let stop = F::lit(TERMINATION_TOL) * initial_norm;
    let initial_rank = RankReport::for_tensor(t, initial_norm);
    let mut current = t.clone();
    let mut steps: Vec<DeflationStep<F>> = Vec::new();
    let termination = loop {
        let norm_before = current.norm();
        if norm_before <= stop {
            break Termination::ReachedZero;
        }
        if steps.len() == max_steps {
            break Termination::MaxSteps;
        }
        let k = steps.len() as u64;
        let step_cfg = cfg.clone().with_seed(child_seed(cfg.seed, k));
        let mut candidates = critical_search(&current, &step_cfg)?;
        if candidates.is_empty() {
            break Termination::NoCriticalPointFound;
        }
        let idx = match policy {
            Policy::BestFit => 0,
            Policy::Random(seed) => stream(child_seed(seed, k), 0).random_range(0..candidates.len()),
            Policy::UserSelected(i) => {
                if i >= candidates.len() {
                    return Err(Error::InvalidArgument(format!(
                        "index {i} out of range: step {k} has {} critical points",
                        candidates.len()
                    )));
                }
                i
            }
        };
        let count = candidates.len();
        let chosen = candidates.swap_remove(idx);
        let next = current.sub_term(&chosen.term)?;
        let norm_after = next.norm();
        steps.push(DeflationStep {
            norm_before,
            rank: RankReport::for_tensor(&next, initial_norm),
            chosen,
            norm_after,
            candidates: count,
        });
        current = next;
    };
    Ok(DeflationChain {
        steps,
        termination,
        policy,
        initial_norm,
        initial_rank,
        final_norm: current.norm(),
        residual: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{power, DenseTensor, LinearForm};

    #[test]
    fn policy_round_trip() {
        for p in [Policy::BestFit, Policy::Random(17), Policy::UserSelected(2)] {
            assert_eq!(p.to_string().parse::<Policy>().unwrap(), p);
        }
        assert_eq!("random".parse::<Policy>().unwrap(), Policy::Random(0));
        assert!("index:x".parse::<Policy>().is_err());
        assert!("worst".parse::<Policy>().is_err());
    }

    #[test]
    fn single_power_takes_one_step() {
        let t: Tensor<f64> = power(&LinearForm::basis(3, 0), 3).unwrap().into();
        for policy in [Policy::BestFit, Policy::Random(3), Policy::UserSelected(0)] {
            let chain = deflate(&t, policy, &SolverConfig::default(), 10).unwrap();
            assert_eq!(chain.termination, Termination::ReachedZero);
            assert_eq!(chain.len(), 1);
        }
    }

    #[test]
    fn matrix_rank_drops_one_per_step() {
        // rank-3 4×4 from three generic outer products
        let a = [1.0, 0.3, -0.7, 2.0, 0.1, -1.2, 0.5, 0.4, 1.1, 0.0, -0.3, 0.9];
        let b = [0.2, 1.4, -0.6, 0.8, 1.0, -0.5, 0.3, 0.7, -1.1, 0.6, 0.9, 0.25];
        let mut m = vec![0.0; 16];
        for r in 0..3 {
            for i in 0..4 {
                for j in 0..4 {
                    m[i * 4 + j] += a[r * 4 + i] * b[r * 4 + j];
                }
            }
        }
        let t: Tensor<f64> = DenseTensor::from_real(vec![4, 4], &m).unwrap().into();
        let chain = deflate(&t, Policy::BestFit, &SolverConfig::default(), 10).unwrap();
        assert_eq!(chain.termination, Termination::ReachedZero);
        assert_eq!(chain.initial_rank.flattening_ranks, vec![3]);
        let ranks: Vec<usize> = chain.steps.iter().map(|s| s.rank.flattening_ranks[0]).collect();
        assert_eq!(ranks, vec![2, 1, 0]);
        for s in &chain.steps {
            let lhs = s.norm_after.powi(2);
            let rhs = s.norm_before.powi(2) - s.chosen.term.norm().powi(2);
            assert!((lhs - rhs).abs() <= 1e-9 * s.norm_before.powi(2));
        }
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let t: Tensor<f64> = power(&LinearForm::basis(2, 0), 3).unwrap().into();
        assert!(deflate(&t, Policy::UserSelected(5), &SolverConfig::default(), 3).is_err());
        assert!(deflate(&t, Policy::BestFit, &SolverConfig::default(), 0).is_err());
    }

    #[test]
    fn zero_tensor_is_already_done() {
        let t: Tensor<f64> = DenseTensor::zeros(vec![2, 2, 2]).unwrap().into();
        let chain = deflate(&t, Policy::BestFit, &SolverConfig::default(), 3).unwrap();
        assert_eq!(chain.termination, Termination::ReachedZero);
        assert!(chain.is_empty());
    }
}
