//! Cayley's hyperdeterminant of a 2×2×2 tensor.
//!
//! Coordinates are `x₁ = a₀₀₀, x₂ = a₀₀₁, …, x₈ = a₁₁₁` (lexicographic), stored
//! 0-based below. With this convention the diagonal tensor `e₀⊗e₀⊗e₀ +
//! e₁⊗e₁⊗e₁` has Δ = 1 and real tensors with Δ > 0 have real rank 2.

use num_complex::Complex;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::DenseTensor;

/// The twelve monomials of Δ as `(coefficient, coordinate indices)`.
pub const CAYLEY_TERMS: [(i32, [usize; 4]); 12] = [
    (1, [0, 0, 7, 7]),
    (1, [1, 1, 6, 6]),
    (1, [2, 2, 5, 5]),
    (1, [3, 3, 4, 4]),
    (-2, [0, 1, 6, 7]),
    (-2, [0, 2, 5, 7]),
    (-2, [0, 3, 4, 7]),
    (-2, [1, 2, 5, 6]),
    (-2, [1, 3, 4, 6]),
    (-2, [2, 3, 4, 5]),
    (4, [0, 3, 5, 6]),
    (4, [1, 2, 4, 7]),
];

fn small_int<R: Num + Clone>(k: i32) -> R {
    let mut acc = R::zero();
    for _ in 0..k.unsigned_abs() {
        acc = acc + R::one();
    }
    if k < 0 {
        R::zero() - acc
    } else {
        acc
    }
}

/// Δ evaluated over any commutative ring (exact for integers and rationals).
pub fn cayley_hyperdeterminant<R: Num + Clone>(x: &[R; 8]) -> R {
    CAYLEY_TERMS.iter().fold(R::zero(), |acc, (c, idx)| {
        let m = idx
            .iter()
            .fold(R::one(), |m, &i| m * x[i].clone());
        acc + small_int::<R>(*c) * m
    })
}

pub fn hyperdeterminant_222<F: Real>(t: &DenseTensor<F>) -> Result<Complex<F>> {
    let coords = coords_222(t)?;
    Ok(cayley_hyperdeterminant(&coords))
}

/// The eight coordinates `x₁…x₈` of a 2×2×2 tensor.
pub fn coords_222<F: Real>(t: &DenseTensor<F>) -> Result<[Complex<F>; 8]> {
    if t.shape() != [2, 2, 2] {
        return Err(Error::ShapeMismatch {
            left: vec![2, 2, 2],
            right: t.shape().to_vec(),
        });
    }
    let mut x = [Complex::new(F::zero(), F::zero()); 8];
    x.copy_from_slice(t.entries());
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaSign {
    Positive,
    Negative,
    Zero,
}

impl std::fmt::Display for DeltaSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DeltaSign::Positive => "Positive",
            DeltaSign::Negative => "Negative",
            DeltaSign::Zero => "Zero",
        };
        f.write_str(s)
    }
}

/// Sign of Δ for a real 2×2×2 tensor; `Zero` when `|Δ| ≤ threshold`.
pub fn delta_sign_with<F: Real>(t: &DenseTensor<F>, threshold: F) -> Result<DeltaSign> {
    let imag = t.max_imag();
    if imag > F::lit(1e-14) * F::one().max(t.norm()) {
        return Err(Error::NotReal(imag.as_f64()));
    }
    let delta = hyperdeterminant_222(t)?.re;
    Ok(if delta.abs() <= threshold {
        DeltaSign::Zero
    } else if delta > F::zero() {
        DeltaSign::Positive
    } else {
        DeltaSign::Negative
    })
}

/// Sign of Δ with the zero band `tol·‖T‖⁴`.
pub fn delta_sign<F: Real>(t: &DenseTensor<F>, tol: F) -> Result<DeltaSign> {
    delta_sign_with(t, tol * t.norm().powi(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{rank_one, LinearForm};

    fn e(k: usize) -> LinearForm<f64> {
        LinearForm::basis(2, k)
    }

    #[test]
    fn visible_terms_of_the_displayed_generator() {
        // y₄²y₅², −2y₃y₄y₅y₆, y₃²y₆², −2y₁y₃y₆y₈, −2y₁y₂y₇y₈, y₁²y₈² (1-based)
        let shown: [(i32, [usize; 4]); 6] = [
            (1, [4, 4, 5, 5]),
            (-2, [3, 4, 5, 6]),
            (1, [3, 3, 6, 6]),
            (-2, [1, 3, 6, 8]),
            (-2, [1, 2, 7, 8]),
            (1, [1, 1, 8, 8]),
        ];
        for (c, idx) in shown {
            let mut zero_based = idx.map(|i| i - 1);
            zero_based.sort_unstable();
            let hit = CAYLEY_TERMS.iter().any(|(cc, ii)| {
                let mut s = *ii;
                s.sort_unstable();
                *cc == c && s == zero_based
            });
            assert!(hit, "monomial {idx:?} with coefficient {c} missing");
        }
        let total: i32 = CAYLEY_TERMS.iter().map(|t| t.0).sum();
        // Δ(1,…,1) = 4 − 12 + 8 = 0: the all-ones tensor is rank one
        assert_eq!(total, 0);
    }

    #[test]
    fn examples() {
        let diag = rank_one(&[e(0), e(0), e(0)])
            .unwrap()
            .add(&rank_one(&[e(1), e(1), e(1)]).unwrap())
            .unwrap();
        assert_eq!(hyperdeterminant_222(&diag).unwrap(), Complex::new(1.0, 0.0));

        let single = rank_one(&[e(0), e(0), e(0)]).unwrap();
        assert_eq!(hyperdeterminant_222(&single).unwrap(), Complex::new(0.0, 0.0));

        let w = DenseTensor::from_real(vec![2, 2, 2], &[0., 1., 1., 0., 1., 0., 0., 0.]).unwrap();
        assert_eq!(hyperdeterminant_222(&w).unwrap(), Complex::new(0.0, 0.0));

        let bad = DenseTensor::<f64>::zeros(vec![2, 2]).unwrap();
        assert!(hyperdeterminant_222(&bad).is_err());
    }

    #[test]
    fn integer_evaluation_is_exact() {
        assert_eq!(cayley_hyperdeterminant(&[1i64, 0, 0, 0, 0, 0, 0, 1]), 1);
        // Δ of a₀₀₀ = a₀₁₁ = a₁₀₁ = a₁₁₀ = 1 picks up only the +4 term
        assert_eq!(cayley_hyperdeterminant(&[1i64, 0, 0, 1, 0, 1, 1, 0]), 4);
        // a₀₀₀ = a₀₀₁ = a₁₁₀ = a₁₁₁ = 1: squares 1+1, cross term -2
        assert_eq!(cayley_hyperdeterminant(&[1i64, 1, 0, 0, 0, 0, 1, 1]), 0);
    }
}
