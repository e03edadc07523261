//! Small dense linear algebra: one-sided Jacobi SVD over ℂ, LU solves and
//! Haar-random orthogonal matrices.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Copy> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Mat::from_vec(self.cols, self.rows, data)
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Thin singular value decomposition `A = Σ σ_k u_k v_kᴴ`, singular values
/// sorted descending.
#[derive(Clone, Debug)]
pub struct Svd<F> {
    pub singular_values: Vec<F>,
    /// Left singular vectors, one per singular value.
    pub u: Vec<Vec<Complex<F>>>,
    /// Right singular vectors, one per singular value (`A v_k = σ_k u_k`).
    pub v: Vec<Vec<Complex<F>>>,
}

const MAX_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi SVD. Accurate to working precision for the
/// small matrices used here; real input stays real.
pub fn svd<F: Real>(a: &Mat<Complex<F>>) -> Svd<F> {
    if a.rows < a.cols {
        // work on Aᴴ so that columns are the short side
        let ah = Mat::from_vec(
            a.cols,
            a.rows,
            a.transpose().data.into_iter().map(|z| z.conj()).collect(),
        );
        let s = svd(&ah);
        return Svd {
            singular_values: s.singular_values,
            u: s.v,
            v: s.u,
        };
    }
    let (m, n) = (a.rows, a.cols);
    // column-major working copies
    let mut cols: Vec<Vec<Complex<F>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex<F>>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex::new(F::zero(), F::zero()); n];
            e[j] = Complex::new(F::one(), F::zero());
            e
        })
        .collect();
    let eps = F::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: F = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: F = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex<F> = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .fold(Complex::new(F::zero(), F::zero()), |s, t| s + t);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g == F::zero() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let two = F::lit(2.0);
                let zeta = (beta - alpha) / (two * g);
                let t = if zeta >= F::zero() {
                    F::one() / (zeta + (F::one() + zeta * zeta).sqrt())
                } else {
                    -F::one() / (-zeta + (F::one() + zeta * zeta).sqrt())
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut triples: Vec<(F, Vec<Complex<F>>, Vec<Complex<F>>)> = cols
        .into_iter()
        .zip(v)
        .map(|(c, vj)| {
            let sigma = c.iter().map(|z| z.norm_sqr()).sum::<F>().sqrt();
            let u = if sigma > F::zero() {
                c.iter().map(|z| z / sigma).collect()
            } else {
                vec![Complex::new(F::zero(), F::zero()); m]
            };
            (sigma, u, vj)
        })
        .collect();
    triples.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut out = Svd {
        singular_values: Vec::with_capacity(n),
        u: Vec::with_capacity(n),
        v: Vec::with_capacity(n),
    };
    for (s, u, vj) in triples {
        out.singular_values.push(s);
        out.u.push(u);
        out.v.push(vj);
    }
    out
}

// columns p, q ← (c·p − s·q·φ̄, s·p + c·q·φ̄) with φ the phase of ⟨p, q⟩
fn rotate<F: Real>(
    cols: &mut [Vec<Complex<F>>],
    p: usize,
    q: usize,
    phase: Complex<F>,
    c: F,
    s: F,
) {
    let conj_phase = phase.conj();
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * conj_phase;
        let nx = *x * c - yq * s;
        let ny = *x * s + yq * c;
        *x = nx;
        *y = ny;
    }
}

pub fn singular_values<F: Real>(a: &Mat<Complex<F>>) -> Vec<F> {
    svd(a).singular_values
}

/// Number of singular values strictly above `threshold`.
pub fn rank_above<F: Real>(singular_values: &[F], threshold: F) -> usize {
    singular_values.iter().filter(|&&s| s > threshold).count()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` when a pivot underflows relative to the matrix scale.
pub fn lu_solve<F: Real>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.len(), n);
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    let scale = m.iter().fold(F::zero(), |acc, v| acc.max(v.abs()));
    if scale == F::zero() {
        return None;
    }
    let tiny = scale * F::epsilon() * F::lit(n as f64);
    for k in 0..n {
        let (piv, pval) = (k..n)
            .map(|i| (i, m[i * n + k].abs()))
            .fold((k, F::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pval <= tiny {
            return None;
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            x.swap(k, piv);
        }
        let d = m[k * n + k];
        for i in (k + 1)..n {
            let f = m[i * n + k] / d;
            if f == F::zero() {
                continue;
            }
            for j in k..n {
                m[i * n + j] = m[i * n + j] - f * m[k * n + j];
            }
            x[i] = x[i] - f * x[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in (k + 1)..n {
            s = s - m[k * n + j] * x[j];
        }
        x[k] = s / m[k * n + k];
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// Haar-distributed real orthogonal matrix: QR of a Gaussian matrix with the
/// signs of `R`'s diagonal absorbed into `Q`. Returned as rows of `Q`.
pub fn haar_orthogonal<F: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat<F> {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
            .collect();
        let mut ok = true;
        for j in 0..n {
            // modified Gram-Schmidt, two passes
            for _ in 0..2 {
                for k in 0..j {
                    let dot: f64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a * b).sum();
                    let ck = cols[k].clone();
                    for (x, y) in cols[j].iter_mut().zip(ck) {
                        *x -= dot * y;
                    }
                }
            }
            let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            // R_jj > 0 convention is what makes the distribution Haar
            for x in cols[j].iter_mut() {
                *x /= norm;
            }
        }
        if ok {
            let mut q = Mat::from_vec(n, n, vec![F::zero(); n * n]);
            for (j, c) in cols.iter().enumerate() {
                for (i, v) in c.iter().enumerate() {
                    q.set(i, j, F::lit(*v));
                }
            }
            return q;
        }
    }
}

/// `Q x` for real `Q` and complex `x`.
pub fn apply_real<F: Real>(q: &Mat<F>, x: &[Complex<F>]) -> Vec<Complex<F>> {
    (0..q.rows)
        .map(|i| {
            (0..q.cols).fold(Complex::new(F::zero(), F::zero()), |acc, j| {
                acc + x[j] * q.get(i, j)
            })
        })
        .collect()
}
