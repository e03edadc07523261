use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, norm_sqr, Real};

/// A vector in ℂⁿ, read as a linear form in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<F> {
    coords: Vec<Complex<F>>,
}

impl<F: Real> LinearForm<F> {
    pub fn new(coords: Vec<Complex<F>>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("linear form needs n >= 1".into()));
        }
        if let Some(i) = coords.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(format!("coords[{i}]")));
        }
        Ok(LinearForm { coords })
    }

    pub fn from_real(coords: &[F]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Complex::new(x, F::zero())).collect())
    }

    /// Standard basis vector `e_k` of ℂⁿ.
    pub fn basis(n: usize, k: usize) -> Self {
        assert!(k < n, "basis index {k} out of range for n={n}");
        let mut coords = vec![Complex::new(F::zero(), F::zero()); n];
        coords[k] = Complex::new(F::one(), F::zero());
        LinearForm { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex<F>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex<F>> {
        self.coords
    }

    /// Bilinear (unconjugated) pairing `Σ aᵢbᵢ`.
    pub fn dot(&self, other: &Self) -> Result<Complex<F>> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(dot_unchecked(&self.coords, &other.coords))
    }

    /// Hermitian squared norm `Σ|aᵢ|²`.
    pub fn norm_sqr(&self) -> F {
        norm_sqr(&self.coords)
    }

    pub fn norm(&self) -> F {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|z| z.re == F::zero() && z.im == F::zero())
    }

    pub fn is_real(&self, tol: F) -> bool {
        let scale = F::one().max(self.norm());
        self.coords.iter().all(|z| z.im.abs() <= tol * scale)
    }

    pub fn scaled(&self, s: Complex<F>) -> Self {
        LinearForm {
            coords: self.coords.iter().map(|z| z * s).collect(),
        }
    }

    /// Unit vector in the Hermitian norm. Panics on the zero form.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > F::zero(), "cannot normalize the zero form");
        self.scaled(Complex::new(F::one() / n, F::zero()))
    }

    /// `Σ cᵢ·vᵢ` over forms of equal length.
    pub fn combination(terms: &[(Complex<F>, &LinearForm<F>)]) -> Result<Self> {
        let n = terms.first().map(|t| t.1.n()).ok_or(Error::EmptyFactors)?;
        let mut coords = vec![Complex::new(F::zero(), F::zero()); n];
        for (c, v) in terms {
            if v.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.n(),
                });
            }
            for (acc, z) in coords.iter_mut().zip(&v.coords) {
                *acc = *acc + c * z;
            }
        }
        Self::new(coords)
    }
}

#[inline]
pub(crate) fn dot_unchecked<F: Real>(a: &[Complex<F>], b: &[Complex<F>]) -> Complex<F> {
    a.iter()
        .zip(b)
        .fold(Complex::new(F::zero(), F::zero()), |s, (x, y)| s + x * y)
}

/// Standard bilinear form on ℂⁿ, no conjugation.
pub fn bilinear_form<F: Real>(a: &LinearForm<F>, b: &LinearForm<F>) -> Result<Complex<F>> {
    a.dot(b)
}

/// `|⟨a,a⟩| ≤ tol·(1 + Σ|aᵢ|²)`.
pub fn is_isotropic<F: Real>(a: &LinearForm<F>, tol: F) -> bool {
    let q = dot_unchecked(&a.coords, &a.coords);
    q.norm() <= tol * (F::one() + a.norm_sqr())
}
