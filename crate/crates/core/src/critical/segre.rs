use num_complex::Complex;
use rayon::prelude::*;

use super::{
    canonical_sign, merge_candidates, random_unit, unit, verify_critical_dense, CriticalPoint,
    SolverConfig, Source,
};
use crate::error::{Error, Result};
use crate::linalg::{lu_solve, Mat};
use crate::rng::stream;
use crate::scalar::Real;
use crate::tensor::{DenseTensor, LinearForm, RankOneTerm};

/// Real dense tensor with contraction helpers for the ALS/Newton loops.
struct RealDense<F> {
    shape: Vec<usize>,
    entries: Vec<F>,
}

impl<F: Real> RealDense<F> {
    fn new(t: &DenseTensor<F>) -> Self {
        RealDense {
            shape: t.shape().to_vec(),
            entries: t.entries().iter().map(|z| z.re).collect(),
        }
    }

    fn for_each<G: FnMut(&[usize], F)>(&self, mut f: G) {
        let mut idx = vec![0usize; self.shape.len()];
        for &e in &self.entries {
            f(&idx, e);
            crate::tensor::advance(&mut idx, &self.shape);
        }
    }

    fn contract_all(&self, x: &[Vec<F>]) -> F {
        let mut s = F::zero();
        self.for_each(|idx, e| {
            s = s + idx.iter().zip(x).fold(e, |acc, (&i, v)| acc * v[i]);
        });
        s
    }

    fn contract_except(&self, x: &[Vec<F>], k: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.shape[k]];
        self.for_each(|idx, e| {
            let w = idx
                .iter()
                .zip(x)
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(e, |acc, (_, (&i, v))| acc * v[i]);
            out[idx[k]] = out[idx[k]] + w;
        });
        out
    }

    fn contract_except_pair(&self, x: &[Vec<F>], k: usize, l: usize) -> Mat<F> {
        let (nk, nl) = (self.shape[k], self.shape[l]);
        let mut out = Mat::from_vec(nk, nl, vec![F::zero(); nk * nl]);
        self.for_each(|idx, e| {
            let w = idx
                .iter()
                .zip(x)
                .enumerate()
                .filter(|(j, _)| *j != k && *j != l)
                .fold(e, |acc, (_, (&i, v))| acc * v[i]);
            out.set(idx[k], idx[l], out.get(idx[k], idx[l]) + w);
        });
        out
    }

    /// Singular-tuple residual: `T·x_{-k} − σx_k` per slot, then
    /// `(1 − x_kᵀx_k)/2` per slot.
    fn residual(&self, x: &[Vec<F>], sigma: F) -> Vec<F> {
        let mut r = Vec::new();
        for k in 0..x.len() {
            let g = self.contract_except(x, k);
            r.extend(g.iter().zip(&x[k]).map(|(gi, xi)| *gi - sigma * *xi));
        }
        for xk in x {
            let s: F = xk.iter().map(|v| *v * *v).sum();
            r.push((F::one() - s) / F::lit(2.0));
        }
        r
    }

    /// Jacobian of [`residual`](Self::residual) with respect to
    /// `(x₁,…,x_p,σ)`.
    fn jacobian(&self, x: &[Vec<F>], sigma: F) -> (usize, usize, Vec<F>) {
        let p = x.len();
        let offsets: Vec<usize> = self
            .shape
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let total: usize = self.shape.iter().sum();
        let cols = total + 1;
        let rows = total + p;
        let mut j = vec![F::zero(); rows * cols];
        for k in 0..p {
            for l in 0..p {
                if l == k {
                    for i in 0..self.shape[k] {
                        j[(offsets[k] + i) * cols + offsets[k] + i] = -sigma;
                    }
                } else {
                    let m = self.contract_except_pair(x, k, l);
                    for a in 0..self.shape[k] {
                        for b in 0..self.shape[l] {
                            j[(offsets[k] + a) * cols + offsets[l] + b] = m.get(a, b);
                        }
                    }
                }
            }
            for i in 0..self.shape[k] {
                j[(offsets[k] + i) * cols + total] = -x[k][i];
                j[(total + k) * cols + offsets[k] + i] = -x[k][i];
            }
        }
        (rows, cols, j)
    }
}

fn norm<F: Real>(v: &[F]) -> F {
    v.iter().map(|x| *x * *x).sum::<F>().sqrt()
}

/// Damped Gauss-Newton on the singular-tuple system. Returns the best
/// iterate found.
fn gauss_newton<F: Real>(
    t: &RealDense<F>,
    mut x: Vec<Vec<F>>,
    mut sigma: F,
    scale: F,
    iters: usize,
) -> (Vec<Vec<F>>, F) {
    let mut res = norm(&t.residual(&x, sigma));
    let floor = F::epsilon() * scale;
    for _ in 0..iters {
        if res <= floor {
            break;
        }
        let r = t.residual(&x, sigma);
        let (rows, cols, j) = t.jacobian(&x, sigma);
        // normal equations JᵀJ δ = −Jᵀr, with a trace-relative ridge
        let mut jtj = vec![F::zero(); cols * cols];
        let mut jtr = vec![F::zero(); cols];
        for a in 0..cols {
            for b in 0..cols {
                let mut s = F::zero();
                for i in 0..rows {
                    s = s + j[i * cols + a] * j[i * cols + b];
                }
                jtj[a * cols + b] = s;
            }
            let mut s = F::zero();
            for i in 0..rows {
                s = s + j[i * cols + a] * r[i];
            }
            jtr[a] = -s;
        }
        let trace = (0..cols).map(|a| jtj[a * cols + a]).sum::<F>();
        for a in 0..cols {
            jtj[a * cols + a] = jtj[a * cols + a] + F::lit(1e-14) * trace;
        }
        let Some(step) = lu_solve(&Mat::from_vec(cols, cols, jtj), &jtr) else {
            break;
        };
        let mut damping = F::one();
        let mut accepted = false;
        for _ in 0..12 {
            let mut cand = x.clone();
            let mut o = 0;
            for xk in cand.iter_mut() {
                for v in xk.iter_mut() {
                    *v = *v + damping * step[o];
                    o += 1;
                }
            }
            let cand_sigma = sigma + damping * step[o];
            let cand_res = norm(&t.residual(&cand, cand_sigma));
            if cand_res < res {
                x = cand;
                sigma = cand_sigma;
                res = cand_res;
                accepted = true;
                break;
            }
            damping = damping / F::lit(2.0);
        }
        if !accepted {
            break;
        }
    }
    (x, sigma)
}

/// Multi-start ALS (higher-order power method) with Gauss-Newton
/// refinement for real tensors of order `p ≥ 3`.
///
/// Three of every four starts run ALS to convergence before refinement; the
/// fourth runs Gauss-Newton directly from the random start, which also
/// reaches saddle-type critical points ALS cannot converge to.
pub fn segre_critical_search<F: Real>(
    t: &DenseTensor<F>,
    cfg: &SolverConfig,
) -> Result<Vec<CriticalPoint<F>>> {
    cfg.validate()?;
    if t.order() < 3 {
        return Err(Error::InvalidArgument(format!(
            "Segre search needs p >= 3, got p = {}",
            t.order()
        )));
    }
    let imag = t.max_imag();
    if imag > F::lit(1e-14) {
        return Err(Error::NotReal(imag.as_f64()));
    }
    let t_norm = t.norm();
    if t_norm == F::zero() {
        return Ok(Vec::new());
    }
    let real = RealDense::new(t);
    let tol = F::lit(cfg.tol);
    let step_tol = F::lit(1e-12);

    let run = |start: usize| -> Option<CriticalPoint<F>> {
        let mut rng = stream(cfg.seed, start as u64);
        let mut x: Vec<Vec<F>> = t
            .shape()
            .iter()
            .map(|&n| random_unit(n, &mut rng))
            .collect();
        let newton_only = start % 4 == 3;
        if !newton_only {
            for _ in 0..cfg.max_iters {
                let mut delta = F::zero();
                for k in 0..x.len() {
                    let next = unit(&real.contract_except(&x, k))?;
                    // sign flips are absorbed by the scale
                    let d_plus = norm(&next.iter().zip(&x[k]).map(|(a, b)| *a - *b).collect::<Vec<_>>());
                    let d_minus = norm(&next.iter().zip(&x[k]).map(|(a, b)| *a + *b).collect::<Vec<_>>());
                    delta = delta.max(d_plus.min(d_minus));
                    x[k] = next;
                }
                if delta < step_tol {
                    break;
                }
            }
        }
        let sigma0 = real.contract_all(&x);
        let (x, _) = gauss_newton(&real, x, sigma0, t_norm, if newton_only { 60 } else { 30 });
        let mut x: Vec<Vec<F>> = x.iter().map(|v| unit(v)).collect::<Option<_>>()?;
        let mut sigma = real.contract_all(&x);
        if !sigma.is_finite() || sigma.abs() <= F::lit(1e-8) * t_norm {
            return None;
        }
        for xk in x.iter_mut() {
            if canonical_sign(xk) {
                sigma = -sigma;
            }
        }
        let factors = x
            .iter()
            .map(|v| LinearForm::from_real(v))
            .collect::<Result<Vec<_>>>()
            .ok()?;
        let term = RankOneTerm::segre(Complex::new(sigma, F::zero()), factors).ok()?;
        let (ok, residual) = verify_critical_dense(t, &term, tol).ok()?;
        if !ok {
            return None;
        }
        let objective = t.sub(&term.to_dense().ok()?).ok()?.norm().powi(2);
        Some(CriticalPoint {
            scale: term.scale(),
            term,
            residual_norm: residual,
            objective,
            source: Source::Als,
            start: Some(start),
        })
    };

    let candidates: Vec<_> = (0..cfg.num_starts).into_par_iter().map(run).collect();
    Ok(merge_candidates(candidates))
}
