use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{apply_real, rank_above, singular_values, Mat};
use crate::scalar::Real;
use crate::tensor::{bilinear_form, is_isotropic, LinearForm};

/// Pairwise orthogonal, linearly independent isotropic vectors in `ℂⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicFrame<F> {
    n: usize,
    vectors: Vec<LinearForm<F>>,
}

/// Canonical frame `w_k = e_{2k} + i·e_{2k+1}`, `k < ⌊n/2⌋`, as coordinate
/// pairs `(re, im)` over any ring. Exact, so its Gram matrix can be checked
/// in integer arithmetic.
pub fn canonical_isotropic_vectors<R: Zero + One + Clone>(n: usize) -> Vec<Vec<(R, R)>> {
    (0..n / 2)
        .map(|k| {
            let mut v = vec![(R::zero(), R::zero()); n];
            v[2 * k] = (R::one(), R::zero());
            v[2 * k + 1] = (R::zero(), R::one());
            v
        })
        .collect()
}

/// The canonical frame of size `⌊n/2⌋`.
pub fn isotropic_frame<F: Real>(n: usize) -> Result<IsotropicFrame<F>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("isotropic frame needs n >= 2, got {n}")));
    }
    let vectors = canonical_isotropic_vectors::<F>(n)
        .into_iter()
        .map(|v| LinearForm::new(v.into_iter().map(|(re, im)| Complex::new(re, im)).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(IsotropicFrame { n, vectors })
}

impl<F: Real> IsotropicFrame<F> {
    /// Validates isotropy, pairwise orthogonality (both relative to `tol`)
    /// and linear independence.
    pub fn new(vectors: Vec<LinearForm<F>>, tol: F) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptyFactors)?;
        let n = first.n();
        for v in &vectors {
            if v.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.n() });
            }
        }
        if vectors.len() > n / 2 {
            return Err(Error::InvalidArgument(format!(
                "{} isotropic vectors cannot be orthogonal in dimension {n}",
                vectors.len()
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::ZeroFactor(i));
            }
            if !is_isotropic(v, tol) {
                return Err(Error::InvalidArgument(format!("vector {i} is not isotropic")));
            }
            for (j, w) in vectors.iter().enumerate().skip(i + 1) {
                let b = bilinear_form(v, w)?.norm();
                if b > tol * v.norm() * w.norm() {
                    return Err(Error::InvalidArgument(format!(
                        "vectors {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        let m = Mat::from_vec(
            vectors.len(),
            n,
            vectors.iter().flat_map(|v| v.normalized().into_coords()).collect(),
        );
        let sv = singular_values(&m);
        if rank_above(&sv, F::lit(1e-8)) < vectors.len() {
            return Err(Error::InvalidArgument("frame vectors are linearly dependent".into()));
        }
        Ok(IsotropicFrame { n, vectors })
    }

    /// Skips validation; for probing what happens on invalid frames.
    pub fn from_vectors_unchecked(vectors: Vec<LinearForm<F>>) -> Self {
        let n = vectors.first().map_or(0, |v| v.n());
        IsotropicFrame { n, vectors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[LinearForm<F>] {
        &self.vectors
    }

    /// The first `k` vectors.
    pub fn prefix(&self, k: usize) -> Self {
        IsotropicFrame {
            n: self.n,
            vectors: self.vectors[..k.min(self.len())].to_vec(),
        }
    }

    /// Image under a real orthogonal `q`; isotropy and orthogonality are
    /// preserved.
    pub fn rotated(&self, q: &Mat<F>) -> Self {
        IsotropicFrame {
            n: self.n,
            vectors: self
                .vectors
                .iter()
                .map(|v| LinearForm::new(apply_real(q, v.coords())).expect("finite"))
                .collect(),
        }
    }
}
