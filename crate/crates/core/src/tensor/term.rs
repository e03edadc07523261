use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{DenseTensor, LinearForm, SymmetricTensor, Tensor};

/// A scaled rank-one tensor: `scale·x₁⊗…⊗x_p` or `scale·u^d`.
#[derive(Clone, Debug, PartialEq)]
pub enum RankOneTerm<F> {
    Segre {
        scale: Complex<F>,
        factors: Vec<LinearForm<F>>,
    },
    Veronese {
        scale: Complex<F>,
        form: LinearForm<F>,
        degree: usize,
    },
}

impl<F: Real> RankOneTerm<F> {
    pub fn segre(scale: Complex<F>, factors: Vec<LinearForm<F>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        Ok(RankOneTerm::Segre { scale, factors })
    }

    pub fn veronese(scale: Complex<F>, form: LinearForm<F>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(degree));
        }
        Ok(RankOneTerm::Veronese {
            scale,
            form,
            degree,
        })
    }

    pub fn scale(&self) -> Complex<F> {
        match self {
            RankOneTerm::Segre { scale, .. } | RankOneTerm::Veronese { scale, .. } => *scale,
        }
    }

    pub fn with_scale(&self, s: Complex<F>) -> Self {
        let mut t = self.clone();
        match &mut t {
            RankOneTerm::Segre { scale, .. } | RankOneTerm::Veronese { scale, .. } => *scale = s,
        }
        t
    }

    /// Factors as seen by the tangent-space machinery: the `p` slot vectors,
    /// or `d` copies of `u`.
    pub fn slot_factors(&self) -> Vec<LinearForm<F>> {
        match self {
            RankOneTerm::Segre { factors, .. } => factors.clone(),
            RankOneTerm::Veronese { form, degree, .. } => vec![form.clone(); *degree],
        }
    }

    pub fn to_dense(&self) -> Result<DenseTensor<F>> {
        match self {
            RankOneTerm::Segre { scale, factors } => {
                Ok(DenseTensor::rank_one(factors)?.scaled(*scale))
            }
            RankOneTerm::Veronese {
                scale,
                form,
                degree,
            } => Ok(SymmetricTensor::power(form, *degree)?.to_dense().scaled(*scale)),
        }
    }

    pub fn to_symmetric(&self) -> Result<SymmetricTensor<F>> {
        match self {
            RankOneTerm::Veronese {
                scale,
                form,
                degree,
            } => Ok(SymmetricTensor::power(form, *degree)?.scaled(*scale)),
            RankOneTerm::Segre { .. } => Err(Error::InvalidArgument(
                "a Segre term has no symmetric representation".into(),
            )),
        }
    }

    pub fn materialize(&self) -> Result<Tensor<F>> {
        match self {
            RankOneTerm::Segre { .. } => Ok(Tensor::Dense(self.to_dense()?)),
            RankOneTerm::Veronese { .. } => Ok(Tensor::Symmetric(self.to_symmetric()?)),
        }
    }

    /// Norm of the materialized term, computed from the factors.
    pub fn norm(&self) -> F {
        match self {
            RankOneTerm::Segre { scale, factors } => {
                factors.iter().fold(scale.norm(), |acc, f| acc * f.norm())
            }
            RankOneTerm::Veronese {
                scale,
                form,
                degree,
            } => scale.norm() * form.norm().powi(*degree as i32),
        }
    }
}
