use num_complex::Complex;
use rayon::prelude::*;

use super::{
    canonical_sign, merge_candidates, random_unit, unit, verify_critical_symmetric,
    CriticalPoint, SolverConfig, Source,
};
use crate::error::{Error, Result};
use crate::linalg::{lu_solve, Mat};
use crate::rng::stream;
use crate::scalar::Real;
use crate::tensor::{LinearForm, RankOneTerm, SymmetricTensor};

/// Real part of a symmetric tensor with multinomial weights folded in, for
/// fast evaluation of `T·u^d`, `T·u^{d-1}` and `T·u^{d-2}`.
struct RealForm<F> {
    n: usize,
    d: usize,
    terms: Vec<(Vec<u32>, F)>,
}

impl<F: Real> RealForm<F> {
    fn new(t: &SymmetricTensor<F>) -> Self {
        let terms = t
            .exponents()
            .iter()
            .zip(t.coeffs())
            .enumerate()
            .filter(|(_, (_, a))| a.re != F::zero())
            .map(|(i, (alpha, a))| (alpha.clone(), a.re * t.weight(i)))
            .collect();
        RealForm {
            n: t.n(),
            d: t.d(),
            terms,
        }
    }

    fn powers(&self, u: &[F]) -> Vec<Vec<F>> {
        u.iter()
            .map(|&x| {
                let mut row = vec![F::one(); self.d + 1];
                for e in 1..=self.d {
                    row[e] = row[e - 1] * x;
                }
                row
            })
            .collect()
    }

    fn mono(pows: &[Vec<F>], alpha: &[u32], k: Option<usize>, l: Option<usize>) -> F {
        let mut acc = F::one();
        for (i, &a) in alpha.iter().enumerate() {
            let mut e = a as usize;
            if k == Some(i) {
                e -= 1;
            }
            if l == Some(i) {
                e -= 1;
            }
            if e > 0 {
                acc = acc * pows[i][e];
            }
        }
        acc
    }

    fn value(&self, u: &[F]) -> F {
        let pows = self.powers(u);
        self.terms
            .iter()
            .map(|(alpha, c)| *c * Self::mono(&pows, alpha, None, None))
            .sum()
    }

    /// `T·u^{d-1}`.
    fn gradient(&self, u: &[F]) -> Vec<F> {
        let pows = self.powers(u);
        let d = F::lit(self.d as f64);
        let mut g = vec![F::zero(); self.n];
        for (alpha, c) in &self.terms {
            for k in 0..self.n {
                if alpha[k] > 0 {
                    g[k] = g[k]
                        + *c * F::lit(alpha[k] as f64) / d * Self::mono(&pows, alpha, Some(k), None);
                }
            }
        }
        g
    }

    /// `T·u^{d-2}`.
    fn hessian(&self, u: &[F]) -> Mat<F> {
        let n = self.n;
        let pows = self.powers(u);
        let dd = F::lit((self.d * (self.d - 1)) as f64);
        let mut h = Mat::from_vec(n, n, vec![F::zero(); n * n]);
        for (alpha, c) in &self.terms {
            for k in 0..n {
                if alpha[k] == 0 {
                    continue;
                }
                for l in 0..n {
                    let al = if l == k { alpha[l] - 1 } else { alpha[l] };
                    if al == 0 {
                        continue;
                    }
                    let w = *c * F::lit(alpha[k] as f64) * F::lit(al as f64) / dd;
                    h.set(k, l, h.get(k, l) + w * Self::mono(&pows, alpha, Some(k), Some(l)));
                }
            }
        }
        h
    }

    /// Stationarity residual `(T·u^{d-1} − λu, (1 − uᵀu)/2)`.
    fn stationarity(&self, u: &[F], lambda: F) -> Vec<F> {
        let g = self.gradient(u);
        let mut r: Vec<F> = g.iter().zip(u).map(|(gi, ui)| *gi - lambda * *ui).collect();
        let uu: F = u.iter().map(|x| *x * *x).sum();
        r.push((F::one() - uu) / F::lit(2.0));
        r
    }
}

fn norm<F: Real>(v: &[F]) -> F {
    v.iter().map(|x| *x * *x).sum::<F>().sqrt()
}

/// Newton's method on `T·u^{d-1} = λu, uᵀu = 1`. Returns the best iterate.
fn newton_polish<F: Real>(form: &RealForm<F>, u0: Vec<F>, scale: F) -> (Vec<F>, F) {
    let n = form.n;
    let d1 = F::lit((form.d - 1) as f64);
    let mut u = u0;
    let mut lambda = form.value(&u);
    let mut res = norm(&form.stationarity(&u, lambda));
    let floor = F::epsilon() * scale;
    for _ in 0..40 {
        if res <= floor {
            break;
        }
        let r = form.stationarity(&u, lambda);
        let h = form.hessian(&u);
        let mut j = Mat::from_vec(n + 1, n + 1, vec![F::zero(); (n + 1) * (n + 1)]);
        for k in 0..n {
            for l in 0..n {
                let diag = if k == l { lambda } else { F::zero() };
                j.set(k, l, d1 * h.get(k, l) - diag);
            }
            j.set(k, n, -u[k]);
            j.set(n, k, -u[k]);
        }
        let rhs: Vec<F> = r.iter().map(|x| -*x).collect();
        let Some(step) = lu_solve(&j, &rhs) else {
            break;
        };
        let cand: Vec<F> = u.iter().zip(&step).map(|(a, b)| *a + *b).collect();
        let cand_lambda = lambda + step[n];
        let cand_res = norm(&form.stationarity(&cand, cand_lambda));
        if !(cand_res < res) {
            break;
        }
        u = cand;
        lambda = cand_lambda;
        res = cand_res;
    }
    match unit(&u) {
        Some(u) => {
            let l = form.value(&u);
            (u, l)
        }
        None => (u, lambda),
    }
}

/// Multi-start shifted symmetric power iteration with Newton refinement.
///
/// Even-numbered starts use shift `+α` (converging to local maxima of
/// `T·u^d` on the sphere), odd-numbered starts `−α` (local minima). Each
/// limit is Newton-polished, turned into `λ·u^d` with `λ = T·u^d`, certified
/// with [`verify_critical_symmetric`] at `cfg.tol` and deduplicated.
pub fn symmetric_critical_search<F: Real>(
    t: &SymmetricTensor<F>,
    cfg: &SolverConfig,
) -> Result<Vec<CriticalPoint<F>>> {
    cfg.validate()?;
    let imag = t.max_imag();
    if imag > F::lit(1e-14) {
        return Err(Error::NotReal(imag.as_f64()));
    }
    if t.d() < 2 {
        return Err(Error::InvalidDegree(t.d()));
    }
    let t_norm = t.norm();
    if t_norm == F::zero() {
        return Ok(Vec::new());
    }
    if t.n() == 1 {
        // a·x^d is its own and only critical point
        let scale = t.coeffs()[0];
        let term = RankOneTerm::veronese(scale, LinearForm::basis(1, 0), t.d())?;
        let (_, residual_norm) = verify_critical_symmetric(t, &term, F::one())?;
        return Ok(vec![CriticalPoint {
            term,
            residual_norm,
            objective: F::zero(),
            scale,
            source: Source::PowerIteration,
            start: None,
        }]);
    }
    let form = RealForm::new(t);
    let alpha = cfg
        .shift
        .map(F::lit)
        .unwrap_or_else(|| F::one() + t_norm);
    let step_tol = F::lit(1e-10);
    let tol = F::lit(cfg.tol);

    let run = |start: usize| -> Option<CriticalPoint<F>> {
        let mut rng = stream(cfg.seed, start as u64);
        let mut u: Vec<F> = random_unit(t.n(), &mut rng);
        let sign = if start % 2 == 0 { F::one() } else { -F::one() };
        for _ in 0..cfg.max_iters {
            let g = form.gradient(&u);
            let w: Vec<F> = g.iter().zip(&u).map(|(gi, ui)| sign * *gi + alpha * *ui).collect();
            let next = unit(&w)?;
            let delta = norm(&next.iter().zip(&u).map(|(a, b)| *a - *b).collect::<Vec<_>>());
            u = next;
            if delta < step_tol {
                break;
            }
        }
        let (mut u, mut lambda) = newton_polish(&form, u, t_norm);
        if !lambda.is_finite() || u.iter().any(|x| !x.is_finite()) {
            return None;
        }
        if lambda.abs() <= F::lit(1e-8) * t_norm {
            return None;
        }
        if canonical_sign(&mut u) && t.d() % 2 == 1 {
            lambda = -lambda;
        }
        let term = RankOneTerm::veronese(
            Complex::new(lambda, F::zero()),
            LinearForm::from_real(&u).ok()?,
            t.d(),
        )
        .ok()?;
        let (ok, residual) = verify_critical_symmetric(t, &term, tol).ok()?;
        if !ok {
            return None;
        }
        let objective = t.sub(&term.to_symmetric().ok()?).ok()?.norm().powi(2);
        Some(CriticalPoint {
            scale: term.scale(),
            term,
            residual_norm: residual,
            objective,
            source: Source::PowerIteration,
            start: Some(start),
        })
    };

    let candidates: Vec<_> = (0..cfg.num_starts).into_par_iter().map(run).collect();
    Ok(merge_candidates(candidates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::power;

    fn e(n: usize, k: usize) -> LinearForm<f64> {
        LinearForm::basis(n, k)
    }

    #[test]
    fn real_form_derivatives_match_complex_contractions() {
        let t = SymmetricTensor::from_coeff_vec(
            3,
            3,
            (0..10).map(|i| Complex::new((i as f64 * 0.37).sin(), 0.0)).collect(),
        )
        .unwrap();
        let u = [0.3, -0.8, 0.5];
        let lf = LinearForm::from_real(&u).unwrap();
        let form = RealForm::new(&t);
        let g = form.gradient(&u);
        let g_ref = t.contract_vector(&lf).unwrap();
        for (a, b) in g.iter().zip(&g_ref) {
            assert!((a - b.re).abs() < 1e-14);
        }
        let h = form.hessian(&u);
        let h_ref = t.contract_matrix(&lf).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((h.get(i, j) - h_ref.get(i, j).re).abs() < 1e-14);
            }
        }
        assert!((form.value(&u) - t.eval(&lf).unwrap().re).abs() < 1e-14);
    }

    #[test]
    fn finds_odeco_terms() {
        let t = power(&e(2, 0), 3).unwrap().add(&power(&e(2, 1), 3).unwrap()).unwrap();
        let pts = symmetric_critical_search(&t, &SolverConfig::default()).unwrap();
        for k in 0..2 {
            let hit = pts.iter().any(|p| {
                let RankOneTerm::Veronese { form, .. } = &p.term else { unreachable!() };
                (form.coords()[k].re - 1.0).abs() < 1e-9 && (p.scale.re - 1.0).abs() < 1e-9
            });
            assert!(hit, "missing e_{k}");
        }
        assert!(pts.iter().all(|p| p.residual_norm <= 1e-10));
    }

    #[test]
    fn finds_weighted_term() {
        let t = power(&e(2, 0), 3)
            .unwrap()
            .scaled(Complex::new(2.0, 0.0))
            .add(&power(&e(2, 1), 3).unwrap())
            .unwrap();
        let pts = symmetric_critical_search(&t, &SolverConfig::default()).unwrap();
        let best = &pts[0];
        assert!((best.scale.re - 2.0).abs() < 1e-9);
        assert!((best.objective - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_tensor_and_bad_inputs() {
        let z = SymmetricTensor::<f64>::zeros(2, 3).unwrap();
        assert!(symmetric_critical_search(&z, &SolverConfig::default()).unwrap().is_empty());
        let c = power(
            &LinearForm::new(vec![Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)]).unwrap(),
            3,
        )
        .unwrap();
        assert!(matches!(
            symmetric_critical_search(&c, &SolverConfig::default()),
            Err(Error::NotReal(_))
        ));
        let cfg = SolverConfig {
            num_starts: 0,
            ..SolverConfig::default()
        };
        assert!(symmetric_critical_search(&power(&e(2, 0), 3).unwrap(), &cfg).is_err());
    }
}
