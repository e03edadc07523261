use std::sync::Arc;

use num_complex::Complex;

use crate::combinatorics::{exponents_desc, MonomialBasis};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{is_finite, Real};
use crate::tensor::{DenseTensor, LinearForm};

/// Homogeneous degree-`d` form in `n` variables.
///
/// Coefficients live in the scaled monomial basis: the stored value `a_α`
/// represents `f = Σ_α C(d,α)·a_α·x^α`. Equivalently `a_α` is the entry of the
/// symmetric `n×…×n` array at any index tuple with multiplicities `α`, so the
/// Bombieri-Weyl form is `Σ_α C(d,α)·a_α·b_α` and `u^d` has `a_α = u^α`.
#[derive(Clone, Debug)]
pub struct SymmetricTensor<F> {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<Complex<F>>,
}

impl<F: Real> PartialEq for SymmetricTensor<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.d() == other.d() && self.coeffs == other.coeffs
    }
}

fn check_shape(n: usize, d: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("symmetric tensor needs n >= 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidDegree(d));
    }
    Ok(())
}

/// Table `pows[i][e] = uᵢ^e` for `e ≤ d`.
fn power_table<F: Real>(u: &[Complex<F>], d: usize) -> Vec<Vec<Complex<F>>> {
    u.iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(d + 1);
            let mut acc = Complex::new(F::one(), F::zero());
            row.push(acc);
            for _ in 0..d {
                acc = acc * x;
                row.push(acc);
            }
            row
        })
        .collect()
}

impl<F: Real> SymmetricTensor<F> {
    pub fn zeros(n: usize, d: usize) -> Result<Self> {
        check_shape(n, d)?;
        let basis = MonomialBasis::get(n, d);
        let coeffs = vec![Complex::new(F::zero(), F::zero()); basis.len()];
        Ok(SymmetricTensor { basis, coeffs })
    }

    /// Coefficients listed in [`exponents`](Self::exponents) order.
    pub fn from_coeff_vec(n: usize, d: usize, coeffs: Vec<Complex<F>>) -> Result<Self> {
        check_shape(n, d)?;
        let basis = MonomialBasis::get(n, d);
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        if let Some(i) = coeffs.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(format!("coeffs[{i}]")));
        }
        Ok(SymmetricTensor { basis, coeffs })
    }

    /// Sparse construction; unlisted exponents are zero, repeated ones add.
    pub fn from_coeffs<'a, I>(n: usize, d: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [u32], Complex<F>)>,
    {
        let mut t = Self::zeros(n, d)?;
        for (alpha, value) in entries {
            let idx = t.basis.rank(alpha).ok_or_else(|| {
                Error::InvalidArgument(format!("exponent {alpha:?} not valid for n={n}, d={d}"))
            })?;
            if !is_finite(&value) {
                return Err(Error::NonFinite(format!("alpha {alpha:?}")));
            }
            t.coeffs[idx] = t.coeffs[idx] + value;
        }
        Ok(t)
    }

    /// `u^d`: coefficient at `α` equals `Π uᵢ^{αᵢ}`.
    pub fn power(u: &LinearForm<F>, d: usize) -> Result<Self> {
        check_shape(u.n(), d)?;
        let basis = MonomialBasis::get(u.n(), d);
        let pows = power_table(u.coords(), d);
        let coeffs = basis
            .exponents
            .iter()
            .map(|alpha| monomial(&pows, alpha, None))
            .collect::<Vec<_>>();
        if let Some(i) = coeffs.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(format!("power coefficient {i}")));
        }
        Ok(SymmetricTensor { basis, coeffs })
    }

    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn d(&self) -> usize {
        self.basis.d
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.basis.exponents
    }

    pub fn coeffs(&self) -> &[Complex<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &[u32]) -> Option<Complex<F>> {
        self.basis.rank(alpha).map(|i| self.coeffs[i])
    }

    /// `C(d, α)` for the `i`-th exponent.
    pub fn weight(&self, i: usize) -> F {
        F::lit(self.basis.weights[i])
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() || self.d() != other.d() {
            return Err(Error::ShapeMismatch {
                left: vec![self.n(), self.d()],
                right: vec![other.n(), other.d()],
            });
        }
        Ok(())
    }

    /// Bombieri-Weyl bilinear form `Σ C(d,α)·a_α·b_α`.
    pub fn bw_inner(&self, other: &Self) -> Result<Complex<F>> {
        self.same_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .zip(&self.basis.weights)
            .fold(Complex::new(F::zero(), F::zero()), |s, ((a, b), &w)| {
                s + a * b * F::lit(w)
            }))
    }

    /// Hermitian Bombieri-Weyl norm `(Σ C(d,α)|a_α|²)^½`; equals the Frobenius
    /// norm of the full symmetric array.
    pub fn norm(&self) -> F {
        self.coeffs
            .iter()
            .zip(&self.basis.weights)
            .map(|(a, &w)| a.norm_sqr() * F::lit(w))
            .sum::<F>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex::new(F::one(), F::zero()), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex::new(-F::one(), F::zero()), other)
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: Complex<F>, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let coeffs: Vec<_> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b * s)
            .collect();
        if let Some(i) = coeffs.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(format!("coeffs[{i}]")));
        }
        Ok(SymmetricTensor {
            basis: self.basis.clone(),
            coeffs,
        })
    }

    pub fn scaled(&self, s: Complex<F>) -> Self {
        SymmetricTensor {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_imag(&self) -> F {
        self.coeffs
            .iter()
            .map(|z| z.im.abs())
            .fold(F::zero(), F::max)
    }

    fn check_form(&self, u: &LinearForm<F>) -> Result<()> {
        if u.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: u.n(),
            });
        }
        Ok(())
    }

    /// `⟨T, u^d⟩ = Σ C(d,α)·a_α·u^α`.
    pub fn eval(&self, u: &LinearForm<F>) -> Result<Complex<F>> {
        self.check_form(u)?;
        let pows = power_table(u.coords(), self.d());
        Ok(self
            .coeffs
            .iter()
            .zip(&self.basis.exponents)
            .zip(&self.basis.weights)
            .fold(Complex::new(F::zero(), F::zero()), |s, ((a, alpha), &w)| {
                s + a * monomial(&pows, alpha, None) * F::lit(w)
            }))
    }

    /// The vector `T·u^{d-1}`, whose `k`-th entry is `⟨T, u^{d-1}·e_k⟩`.
    pub fn contract_vector(&self, u: &LinearForm<F>) -> Result<Vec<Complex<F>>> {
        self.check_form(u)?;
        let n = self.n();
        let d = F::lit(self.d() as f64);
        let pows = power_table(u.coords(), self.d());
        let mut out = vec![Complex::new(F::zero(), F::zero()); n];
        for ((a, alpha), &w) in self
            .coeffs
            .iter()
            .zip(&self.basis.exponents)
            .zip(&self.basis.weights)
        {
            if a.re == F::zero() && a.im == F::zero() {
                continue;
            }
            for k in 0..n {
                if alpha[k] == 0 {
                    continue;
                }
                // C(d,α)·α_k/d = C(d-1, α-e_k)
                let c = F::lit(w) * F::lit(alpha[k] as f64) / d;
                out[k] = out[k] + a * monomial(&pows, alpha, Some((k, None))) * c;
            }
        }
        Ok(out)
    }

    /// The symmetric matrix `T·u^{d-2}`; requires `d ≥ 2`.
    pub fn contract_matrix(&self, u: &LinearForm<F>) -> Result<Mat<Complex<F>>> {
        self.check_form(u)?;
        if self.d() < 2 {
            return Err(Error::InvalidDegree(self.d()));
        }
        let n = self.n();
        let dd = F::lit((self.d() * (self.d() - 1)) as f64);
        let pows = power_table(u.coords(), self.d());
        let mut out = Mat::from_vec(n, n, vec![Complex::new(F::zero(), F::zero()); n * n]);
        for ((a, alpha), &w) in self
            .coeffs
            .iter()
            .zip(&self.basis.exponents)
            .zip(&self.basis.weights)
        {
            if a.re == F::zero() && a.im == F::zero() {
                continue;
            }
            for k in 0..n {
                if alpha[k] == 0 {
                    continue;
                }
                for l in 0..n {
                    let al = if l == k { alpha[l] - 1 } else { alpha[l] };
                    if al == 0 {
                        continue;
                    }
                    let c = F::lit(w) * F::lit(alpha[k] as f64) * F::lit(al as f64) / dd;
                    let m = monomial(&pows, alpha, Some((k, Some(l))));
                    out.set(k, l, out.get(k, l) + a * m * c);
                }
            }
        }
        Ok(out)
    }

    /// Full `n×…×n` array (d slots), entry `a_α` at every tuple with
    /// multiplicities `α`.
    pub fn to_dense(&self) -> DenseTensor<F> {
        let n = self.n();
        let d = self.d();
        let total = n.pow(d as u32);
        let mut entries = Vec::with_capacity(total);
        let mut alpha = vec![0u32; n];
        let mut idx = vec![0usize; d];
        for _ in 0..total {
            alpha.iter_mut().for_each(|a| *a = 0);
            for &i in &idx {
                alpha[i] += 1;
            }
            let r = self.basis.rank(&alpha).expect("valid exponent");
            entries.push(self.coeffs[r]);
            // odometer, last index fastest
            for pos in (0..d).rev() {
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
            }
        }
        DenseTensor::from_entries(vec![n; d], entries).expect("consistent shape")
    }

    /// Catalecticant (symmetric flattening) with rows indexed by degree-`q`
    /// exponents and columns by degree-`(d-q)` exponents. Same rank as the
    /// `q | d-q` flattening of [`to_dense`](Self::to_dense).
    pub fn catalecticant(&self, q: usize) -> Mat<Complex<F>> {
        let n = self.n();
        let d = self.d();
        assert!(q <= d);
        let rows = exponents_desc(n, q);
        let cols = exponents_desc(n, d - q);
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        let mut alpha = vec![0u32; n];
        for b in &rows {
            for g in &cols {
                for i in 0..n {
                    alpha[i] = b[i] + g[i];
                }
                data.push(self.coeffs[self.basis.rank(&alpha).expect("valid exponent")]);
            }
        }
        Mat::from_vec(rows.len(), cols.len(), data)
    }
}

/// `u^α`, optionally with one or two exponents lowered by one.
#[inline]
fn monomial<F: Real>(
    pows: &[Vec<Complex<F>>],
    alpha: &[u32],
    lower: Option<(usize, Option<usize>)>,
) -> Complex<F> {
    let mut acc = Complex::new(F::one(), F::zero());
    for (i, &a) in alpha.iter().enumerate() {
        let mut e = a as usize;
        if let Some((k, l)) = lower {
            if i == k {
                e -= 1;
            }
            if l == Some(i) {
                e -= 1;
            }
        }
        if e > 0 {
            acc = acc * pows[i][e];
        }
    }
    acc
}
