use serde::{Deserialize, Serialize};

use super::hyperdet::{delta_sign_with, hyperdeterminant_222, DeltaSign};
use crate::critical::RANK_TOL;
use crate::error::{Error, Result};
use crate::linalg::{rank_above, singular_values, Mat};
use crate::scalar::Real;
use crate::tensor::{bipartitions, DenseTensor, SymmetricTensor, Tensor};

/// Rank indicators of a tensor: numerical ranks of its flattenings and, for
/// real 2×2×2 tensors, the sign of the hyperdeterminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub flattening_ranks: Vec<usize>,
    pub hyperdet_sign: Option<DeltaSign>,
}

impl RankReport {
    /// Largest flattening rank, a lower bound for the border rank.
    pub fn max_flattening_rank(&self) -> usize {
        self.flattening_ranks.iter().copied().max().unwrap_or(0)
    }

    /// Real rank of a real 2×2×2 tensor read off its orbit invariants:
    /// Δ > 0 gives 2, Δ < 0 gives 3, and on Δ = 0 full flattening ranks mark
    /// the tangential (W-type) orbit of rank 3. `None` for other shapes.
    pub fn real_rank_222(&self) -> Option<usize> {
        let sign = self.hyperdet_sign?;
        if self.flattening_ranks.len() != 3 {
            return None;
        }
        let max = self.max_flattening_rank();
        if max <= 1 {
            return Some(max);
        }
        Some(match sign {
            DeltaSign::Positive => 2,
            DeltaSign::Negative => 3,
            DeltaSign::Zero if self.flattening_ranks.iter().all(|&r| r == 2) => 3,
            DeltaSign::Zero => 2,
        })
    }

    /// Rank report with thresholds relative to `max(‖T‖, reference)`, so
    /// that residuals far below a chain's initial norm read as rank zero.
    pub fn for_tensor<F: Real>(t: &Tensor<F>, reference: F) -> Self {
        match t {
            Tensor::Dense(d) => dense_report(d, reference, F::lit(crate::DEFAULT_TOL)),
            Tensor::Symmetric(s) => symmetric_report(s, reference),
        }
    }
}

fn numerical_rank<F: Real>(m: &Mat<num_complex::Complex<F>>, reference: F) -> usize {
    let sv = singular_values(m);
    let smax = sv.first().copied().unwrap_or(F::zero());
    let scale = smax.max(reference);
    if scale == F::zero() {
        return 0;
    }
    rank_above(&sv, F::lit(RANK_TOL) * scale)
}

fn dense_report<F: Real>(t: &DenseTensor<F>, reference: F, tol: F) -> RankReport {
    let flattening_ranks = bipartitions(t.order())
        .iter()
        .map(|rows| numerical_rank(&t.flatten(rows), reference))
        .collect();
    let hyperdet_sign = if t.shape() == [2, 2, 2] {
        let scale = t.norm().max(reference);
        delta_sign_with(t, tol * scale.powi(4)).ok()
    } else {
        None
    };
    RankReport {
        flattening_ranks,
        hyperdet_sign,
    }
}

/// Catalecticant ranks for `q = 1..⌊d/2⌋`.
fn symmetric_report<F: Real>(t: &SymmetricTensor<F>, reference: F) -> RankReport {
    let flattening_ranks = (1..=t.d() / 2)
        .map(|q| numerical_rank(&t.catalecticant(q), reference))
        .collect();
    RankReport {
        flattening_ranks,
        hyperdet_sign: None,
    }
}

/// Flattening ranks of the three `1|2` partitions and the Δ sign at
/// `tol·‖T‖⁴`, for a real 2×2×2 tensor.
pub fn real_rank_222<F: Real>(t: &DenseTensor<F>, tol: F) -> Result<RankReport> {
    hyperdeterminant_222(t)?;
    let imag = t.max_imag();
    if imag > F::lit(1e-14) * F::one().max(t.norm()) {
        return Err(Error::NotReal(imag.as_f64()));
    }
    let report = dense_report(t, F::zero(), tol);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{power, rank_one, LinearForm};

    fn e(k: usize) -> LinearForm<f64> {
        LinearForm::basis(2, k)
    }

    #[test]
    fn examples() {
        let diag = rank_one(&[e(0), e(0), e(0)])
            .unwrap()
            .add(&rank_one(&[e(1), e(1), e(1)]).unwrap())
            .unwrap();
        let r = real_rank_222(&diag, 1e-10).unwrap();
        assert_eq!(r.flattening_ranks, vec![2, 2, 2]);
        assert_eq!(r.hyperdet_sign, Some(DeltaSign::Positive));

        let single = rank_one(&[e(0), e(0), e(0)]).unwrap();
        let r = real_rank_222(&single, 1e-10).unwrap();
        assert_eq!(r.flattening_ranks, vec![1, 1, 1]);
        assert_eq!(r.hyperdet_sign, Some(DeltaSign::Zero));

        let w = DenseTensor::from_real(vec![2, 2, 2], &[0., 1., 1., 0., 1., 0., 0., 0.]).unwrap();
        let r = real_rank_222(&w, 1e-10).unwrap();
        assert_eq!(r.flattening_ranks, vec![2, 2, 2]);
        assert_eq!(r.real_rank_222(), Some(3));
        assert_eq!(r.hyperdet_sign, Some(DeltaSign::Zero));

        assert!(real_rank_222(&DenseTensor::<f64>::zeros(vec![2, 3, 2]).unwrap(), 1e-10).is_err());
    }

    #[test]
    fn negative_delta_tensor() {
        // e₀e₀e₀ − e₀e₁e₁ − e₁e₀e₁ − e₁e₁e₀: Δ = −4
        let entries = [1.0, 0.0, 0.0, -1.0, 0.0, -1.0, -1.0, 0.0];
        let t = DenseTensor::from_real(vec![2, 2, 2], &entries).unwrap();
        let exact = super::super::hyperdet::cayley_hyperdeterminant(&[1i64, 0, 0, -1, 0, -1, -1, 0]);
        assert_eq!(exact, -4);
        let r = real_rank_222(&t, 1e-10).unwrap();
        assert_eq!(r.hyperdet_sign, Some(DeltaSign::Negative));
    }

    #[test]
    fn symmetric_reports_use_catalecticants() {
        let t = power(&LinearForm::from_real(&[1.0, 2.0, 0.5]).unwrap(), 4)
            .unwrap()
            .add(&power(&e3(2), 4).unwrap())
            .unwrap();
        let r = RankReport::for_tensor(&Tensor::Symmetric(t), 0.0);
        assert_eq!(r.flattening_ranks, vec![2, 2]);
        assert_eq!(r.hyperdet_sign, None);
    }

    fn e3(k: usize) -> LinearForm<f64> {
        LinearForm::basis(3, k)
    }
}
