use num_complex::Complex;

use super::{canonical_sign, verify_critical_dense, CriticalPoint, Source};
use crate::error::{Error, Result};
use crate::linalg::svd;
use crate::scalar::Real;
use crate::tensor::{DenseTensor, LinearForm, RankOneTerm};

/// Singular values at or below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-8;

/// Every critical rank-one approximation of a real matrix: one per nonzero
/// singular triple, `σ_k·u_k⊗v_k`, in descending `σ_k` (ascending objective).
pub fn matrix_critical_points<F: Real>(m: &DenseTensor<F>) -> Result<Vec<CriticalPoint<F>>> {
    if m.order() != 2 {
        return Err(Error::InvalidArgument(format!(
            "matrix path needs p = 2, got p = {}",
            m.order()
        )));
    }
    let imag = m.max_imag();
    if imag > F::lit(1e-14) {
        return Err(Error::NotReal(imag.as_f64()));
    }
    let decomposition = svd(&m.flatten(&[0]));
    let smax = decomposition
        .singular_values
        .first()
        .copied()
        .unwrap_or(F::zero());
    if smax == F::zero() {
        return Ok(Vec::new());
    }
    let threshold = F::lit(RANK_TOL) * smax;
    let mut out = Vec::new();
    for k in 0..decomposition.singular_values.len() {
        let sigma = decomposition.singular_values[k];
        if sigma <= threshold {
            break;
        }
        let mut u: Vec<F> = decomposition.u[k].iter().map(|z| z.re).collect();
        // M v = σ u with real v, so the term is σ·u⊗v
        let mut v: Vec<F> = decomposition.v[k].iter().map(|z| z.re).collect();
        if canonical_sign(&mut u) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let term = RankOneTerm::segre(
            Complex::new(sigma, F::zero()),
            vec![LinearForm::from_real(&u)?, LinearForm::from_real(&v)?],
        )?;
        let (_, residual) = verify_critical_dense(m, &term, F::one())?;
        let objective = m.sub(&term.to_dense()?)?.norm().powi(2);
        out.push(CriticalPoint {
            scale: term.scale(),
            term,
            residual_norm: residual,
            objective,
            source: Source::Svd,
            start: None,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::segre_tangent_residuals;

    #[test]
    fn diagonal_matrix() {
        let m = DenseTensor::<f64>::from_real(vec![2, 2], &[3.0, 0.0, 0.0, 1.0]).unwrap();
        let pts = matrix_critical_points(&m).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].scale.re - 3.0).abs() < 1e-15);
        assert!((pts[1].scale.re - 1.0).abs() < 1e-15);
        let t0 = pts[0].term.to_dense().unwrap();
        assert!((t0.get(&[0, 0]).re - 3.0).abs() < 1e-15);
        assert!((pts[0].objective - 1.0).abs() < 1e-14);
        for p in &pts {
            assert!(p.residual_norm < 1e-15);
        }
    }

    #[test]
    fn zero_matrix_has_none() {
        let m = DenseTensor::<f64>::zeros(vec![3, 2]).unwrap();
        assert!(matrix_critical_points(&m).unwrap().is_empty());
    }

    #[test]
    fn rejects_complex_and_non_matrix() {
        let m = DenseTensor::from_entries(
            vec![1, 2],
            vec![Complex::new(1.0, 0.5), Complex::new(0.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(matrix_critical_points(&m), Err(Error::NotReal(_))));
        let t = DenseTensor::<f64>::zeros(vec![2, 2, 2]).unwrap();
        assert!(matrix_critical_points(&t).is_err());
    }

    #[test]
    fn rectangular_residuals_small() {
        let m = DenseTensor::from_real(
            vec![2, 3],
            &[1.0, 2.0, -1.0, 0.5, -0.25, 3.0],
        )
        .unwrap();
        let pts = matrix_critical_points(&m).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            let diff = m.sub(&p.term.to_dense().unwrap()).unwrap();
            let r = segre_tangent_residuals(&diff, &p.term.slot_factors()).unwrap();
            let worst = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(worst <= 1e-8 * m.norm());
        }
    }
}
