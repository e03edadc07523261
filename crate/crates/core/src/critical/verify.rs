use crate::error::{Error, Result};
use crate::scalar::{max_abs, Real};
use crate::tensor::{
    segre_tangent_residuals, DenseTensor, RankOneTerm, SymmetricTensor, Tensor,
};

fn normalizer<F: Real>(t_norm: F, term_norm: F) -> F {
    let s = t_norm + term_norm;
    if s > F::zero() {
        s
    } else {
        F::one()
    }
}

/// Certifies `T − term ⟂ T_{u^d}X` for a symmetric term `scale·u^d`.
///
/// The residual is `max_k |⟨T − term, û^{d-1}e_k⟩| / (‖T‖ + ‖term‖)` with `û`
/// the unit vector along `u`. Complex and isotropic `u` are accepted.
pub fn verify_critical_symmetric<F: Real>(
    t: &SymmetricTensor<F>,
    term: &RankOneTerm<F>,
    tol: F,
) -> Result<(bool, F)> {
    let (form, degree) = match term {
        RankOneTerm::Veronese { form, degree, .. } => (form, *degree),
        RankOneTerm::Segre { .. } => {
            return Err(Error::InvalidArgument(
                "symmetric verification needs a power term".into(),
            ))
        }
    };
    if form.n() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n(),
            got: form.n(),
        });
    }
    if degree != t.d() {
        return Err(Error::ShapeMismatch {
            left: vec![t.n(), t.d()],
            right: vec![form.n(), degree],
        });
    }
    if form.is_zero() {
        return Err(Error::ZeroFactor(0));
    }
    let diff = t.sub(&term.to_symmetric()?)?;
    let r = diff.contract_vector(&form.normalized())?;
    let residual = max_abs(&r) / normalizer(t.norm(), term.norm());
    Ok((residual <= tol, residual))
}

/// Certifies `T − term ⟂ T_xX` on the Segre cone; a power term is read as
/// `d` equal slots.
pub fn verify_critical_dense<F: Real>(
    t: &DenseTensor<F>,
    term: &RankOneTerm<F>,
    tol: F,
) -> Result<(bool, F)> {
    let factors = term.slot_factors();
    if factors.len() != t.order() {
        return Err(Error::DimensionMismatch {
            expected: t.order(),
            got: factors.len(),
        });
    }
    if let Some(k) = factors.iter().position(|f| f.is_zero()) {
        return Err(Error::ZeroFactor(k));
    }
    let units: Vec<_> = factors.iter().map(|f| f.normalized()).collect();
    let diff = t.sub(&term.to_dense()?)?;
    let r = segre_tangent_residuals(&diff, &units)?;
    let residual = max_abs(&r) / normalizer(t.norm(), term.norm());
    Ok((residual <= tol, residual))
}

pub fn verify_critical<F: Real>(
    t: &Tensor<F>,
    term: &RankOneTerm<F>,
    tol: F,
) -> Result<(bool, F)> {
    match t {
        Tensor::Dense(d) => verify_critical_dense(d, term, tol),
        Tensor::Symmetric(s) => verify_critical_symmetric(s, term, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{power, rank_one, LinearForm};
    use num_complex::Complex;

    type C = Complex<f64>;

    fn one() -> C {
        C::new(1.0, 0.0)
    }

    fn e(n: usize, k: usize) -> LinearForm<f64> {
        LinearForm::basis(n, k)
    }

    #[test]
    fn isotropic_plus_orthogonal_real_term() {
        let iso = LinearForm::new(vec![one(), C::new(0.0, 1.0), C::new(0.0, 0.0)]).unwrap();
        let t = power(&iso, 4).unwrap().add(&power(&e(3, 2), 4).unwrap()).unwrap();
        let term = RankOneTerm::veronese(one(), iso, 4).unwrap();
        let (ok, r) = verify_critical_symmetric(&t, &term, 1e-10).unwrap();
        assert!(ok);
        assert!(r <= 1e-12);
    }

    #[test]
    fn conjugate_isotropic_pair_is_not_orthogonal() {
        // ⟨(1,i),(1,-i)⟩ = 2, so the second power spoils criticality
        let a = LinearForm::new(vec![one(), C::new(0.0, 1.0)]).unwrap();
        let b = LinearForm::new(vec![one(), C::new(0.0, -1.0)]).unwrap();
        assert_eq!(a.dot(&b).unwrap(), C::new(2.0, 0.0));
        let t = power(&a, 4).unwrap().add(&power(&b, 4).unwrap()).unwrap();
        let term = RankOneTerm::veronese(one(), a, 4).unwrap();
        let (ok, r) = verify_critical_symmetric(&t, &term, 1e-10).unwrap();
        assert!(!ok && r > 0.1);
    }

    #[test]
    fn wrong_term_fails() {
        let t = power(&e(2, 0), 3).unwrap();
        let term = RankOneTerm::veronese(one(), e(2, 1), 3).unwrap();
        let (ok, r) = verify_critical_symmetric(&t, &term, 1e-10).unwrap();
        // T - term = e₀³ - e₁³; contracting with e₁² leaves -e₁, normalized by ‖T‖+‖term‖ = 2
        assert!(!ok);
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_form_is_rejected() {
        let t = power(&e(2, 0), 3).unwrap();
        let zero = LinearForm::from_real(&[0.0, 0.0]).unwrap();
        let term = RankOneTerm::veronese(one(), zero, 3).unwrap();
        assert!(matches!(
            verify_critical_symmetric(&t, &term, 1e-10),
            Err(Error::ZeroFactor(0))
        ));
    }

    #[test]
    fn dense_examples() {
        let a = rank_one(&[e(2, 0), e(2, 0), e(2, 0)]).unwrap();
        let b = rank_one(&[e(2, 1), e(2, 1), e(2, 1)]).unwrap();
        let t = a.add(&b).unwrap();
        let term = RankOneTerm::segre(one(), vec![e(2, 0), e(2, 0), e(2, 0)]).unwrap();
        assert!(verify_critical_dense(&t, &term, 1e-10).unwrap().0);
        assert!(verify_critical_dense(&a, &term, 1e-10).unwrap().0);

        let off = RankOneTerm::segre(one(), vec![e(2, 1), e(2, 0), e(2, 0)]).unwrap();
        assert!(!verify_critical_dense(&a, &off, 1e-10).unwrap().0);
    }

    #[test]
    fn weakly_odeco_complex_dense_pair() {
        // x¹ = (1,i) is isotropic, so pairing x¹ with itself in slot 0 is
        // still orthogonal; slots 1 and 2 are orthogonal by construction
        let iso = LinearForm::new(vec![one(), C::new(0.0, 1.0)]).unwrap();
        let y = LinearForm::new(vec![C::new(0.6, 0.2), C::new(-0.3, 1.0)]).unwrap();
        let y_perp = LinearForm::new(vec![C::new(0.3, -1.0), C::new(0.6, 0.2)]).unwrap();
        assert!(y.dot(&y_perp).unwrap().norm() < 1e-15);
        let z = e(2, 0);
        let z_perp = e(2, 1);
        let first = vec![iso.clone(), y.clone(), z.clone()];
        let second = vec![iso.scaled(C::new(2.0, -1.0)), y_perp, z_perp];
        let t = rank_one(&first)
            .unwrap()
            .add(&rank_one(&second).unwrap())
            .unwrap();
        for f in [first, second] {
            let term = RankOneTerm::segre(one(), f).unwrap();
            let (ok, r) = verify_critical_dense(&t, &term, 1e-10).unwrap();
            assert!(ok, "residual {r}");
        }
    }
}
