use crate::error::{Error, Result};
use crate::scalar::{max_abs, Real};
use crate::tensor::{segre_tangent_residuals, RankOneTerm, Tensor};

/// Whether `y ∈ N_xX`: every tangent residual of `y` at the unit factors of
/// `x` is at most `tol·‖y‖`. A power term against a symmetric `y` uses the
/// Veronese tangent space; everything else is read on the Segre cone.
pub fn normal_space_membership<F: Real>(x: &RankOneTerm<F>, y: &Tensor<F>, tol: F) -> Result<bool> {
    let factors = x.slot_factors();
    if let Some(k) = factors.iter().position(|f| f.is_zero()) {
        return Err(Error::ZeroFactor(k));
    }
    if x.scale().norm() == F::zero() {
        return Err(Error::ZeroFactor(0));
    }
    let y_norm = y.norm();
    if y_norm == F::zero() {
        return Ok(true);
    }
    let residuals = match (x, y) {
        (RankOneTerm::Veronese { form, .. }, Tensor::Symmetric(s)) => {
            s.contract_vector(&form.normalized())?
        }
        _ => {
            let units: Vec<_> = factors.iter().map(|f| f.normalized()).collect();
            segre_tangent_residuals(&y.to_dense(), &units)?
        }
    };
    Ok(max_abs(&residuals) <= tol * y_norm)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;

    use super::*;
    use crate::tensor::{power, rank_one, LinearForm};

    fn e(k: usize) -> LinearForm<f64> {
        LinearForm::basis(2, k)
    }

    fn seg(f: Vec<LinearForm<f64>>) -> RankOneTerm<f64> {
        RankOneTerm::segre(Complex::new(1.0, 0.0), f).unwrap()
    }

    #[test]
    fn examples() {
        let x = seg(vec![e(0), e(0), e(0)]);
        let y: Tensor<f64> = rank_one(&[e(0), e(1), e(1)]).unwrap().into();
        assert!(normal_space_membership(&x, &y, 1e-10).unwrap());

        let y: Tensor<f64> = rank_one(&[e(1), e(0), e(0)]).unwrap().into();
        assert!(!normal_space_membership(&x, &y, 1e-10).unwrap());

        let x = RankOneTerm::veronese(Complex::new(1.0, 0.0), e(0), 3).unwrap();
        let y: Tensor<f64> = power(&e(1), 3).unwrap().into();
        assert!(normal_space_membership(&x, &y, 1e-10).unwrap());
    }

    #[test]
    fn zero_term_rejected() {
        let zero = LinearForm::from_real(&[0.0, 0.0]).unwrap();
        let x = seg(vec![e(0), zero]);
        let y: Tensor<f64> = rank_one(&[e(0), e(1)]).unwrap().into();
        assert!(matches!(normal_space_membership(&x, &y, 1e-10), Err(Error::ZeroFactor(1))));
    }
}
