use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{is_finite, norm_sqr, Real};
use crate::tensor::LinearForm;

/// p-way complex array of shape `n₁×…×n_p`, row-major (last index fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<F> {
    shape: Vec<usize>,
    entries: Vec<Complex<F>>,
}

impl<F: Real> DenseTensor<F> {
    pub fn zeros(shape: Vec<usize>) -> Result<Self> {
        let len = check_shape(&shape)?;
        Ok(DenseTensor {
            shape,
            entries: vec![Complex::new(F::zero(), F::zero()); len],
        })
    }

    pub fn from_entries(shape: Vec<usize>, entries: Vec<Complex<F>>) -> Result<Self> {
        let len = check_shape(&shape)?;
        if entries.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(format!("entries[{i}]")));
        }
        Ok(DenseTensor { shape, entries })
    }

    pub fn from_real(shape: Vec<usize>, entries: &[F]) -> Result<Self> {
        Self::from_entries(
            shape,
            entries.iter().map(|&x| Complex::new(x, F::zero())).collect(),
        )
    }

    /// `x₁⊗…⊗x_p`.
    pub fn rank_one(factors: &[LinearForm<F>]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let shape: Vec<usize> = factors.iter().map(|f| f.n()).collect();
        let mut entries = vec![Complex::new(F::one(), F::zero())];
        for f in factors {
            let mut next = Vec::with_capacity(entries.len() * f.n());
            for e in &entries {
                for c in f.coords() {
                    next.push(e * c);
                }
            }
            entries = next;
        }
        Self::from_entries(shape, entries)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex<F>] {
        &self.entries
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index arity");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index {i} out of range {n}");
            acc * n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> Complex<F> {
        self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Complex<F>) {
        let o = self.offset(idx);
        self.entries[o] = value;
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.clone(),
                right: other.shape.clone(),
            });
        }
        Ok(())
    }

    /// Bombieri-Weyl form with the standard bilinear form in every slot:
    /// the entrywise sum `Σ S_idx·T_idx`.
    pub fn bw_inner(&self, other: &Self) -> Result<Complex<F>> {
        self.same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(Complex::new(F::zero(), F::zero()), |s, (a, b)| s + a * b))
    }

    /// Frobenius (Hermitian) norm.
    pub fn norm(&self) -> F {
        norm_sqr(&self.entries).sqrt()
    }

    pub fn max_imag(&self) -> F {
        self.entries
            .iter()
            .map(|z| z.im.abs())
            .fold(F::zero(), F::max)
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
        Self::from_entries(
            self.shape.clone(),
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b * s)
                .collect(),
        )
    }

    pub fn scaled(&self, s: Complex<F>) -> Self {
        DenseTensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Matrix view with the slots in `row_slots` (in that order) indexing
    /// rows and the remaining slots (ascending) indexing columns.
    pub fn flatten(&self, row_slots: &[usize]) -> Mat<Complex<F>> {
        let p = self.order();
        let col_slots: Vec<usize> = (0..p).filter(|s| !row_slots.contains(s)).collect();
        let rows: usize = row_slots.iter().map(|&s| self.shape[s]).product();
        let cols: usize = col_slots.iter().map(|&s| self.shape[s]).product();
        let mut data = vec![Complex::new(F::zero(), F::zero()); rows * cols];
        let mut idx = vec![0usize; p];
        for e in &self.entries {
            let r = row_slots
                .iter()
                .fold(0, |acc, &s| acc * self.shape[s] + idx[s]);
            let c = col_slots
                .iter()
                .fold(0, |acc, &s| acc * self.shape[s] + idx[s]);
            data[r * cols + c] = *e;
            advance(&mut idx, &self.shape);
        }
        Mat::from_vec(rows, cols, data)
    }

    fn check_factors(&self, x: &[LinearForm<F>]) -> Result<()> {
        if x.len() != self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                got: x.len(),
            });
        }
        for (f, &n) in x.iter().zip(&self.shape) {
            if f.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.n(),
                });
            }
        }
        Ok(())
    }

    /// Full contraction `T(x₁,…,x_p)`.
    pub fn contract_all(&self, x: &[LinearForm<F>]) -> Result<Complex<F>> {
        self.check_factors(x)?;
        let mut idx = vec![0usize; self.order()];
        let mut s = Complex::new(F::zero(), F::zero());
        for e in &self.entries {
            let w = idx
                .iter()
                .zip(x)
                .fold(*e, |acc, (&i, f)| acc * f.coords()[i]);
            s = s + w;
            advance(&mut idx, &self.shape);
        }
        Ok(s)
    }

    /// Contraction against every factor except slot `k`; a vector of length
    /// `n_k` whose `i`-th entry is `⟨T, x₁⊗…⊗e_i⊗…⊗x_p⟩`.
    pub fn contract_except(&self, x: &[LinearForm<F>], k: usize) -> Result<Vec<Complex<F>>> {
        self.check_factors(x)?;
        let mut out = vec![Complex::new(F::zero(), F::zero()); self.shape[k]];
        let mut idx = vec![0usize; self.order()];
        for e in &self.entries {
            let w = idx
                .iter()
                .zip(x)
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(*e, |acc, (_, (&i, f))| acc * f.coords()[i]);
            out[idx[k]] = out[idx[k]] + w;
            advance(&mut idx, &self.shape);
        }
        Ok(out)
    }

    /// Contraction against every factor except slots `k ≠ l`; an `n_k×n_l`
    /// matrix.
    pub fn contract_except_pair(
        &self,
        x: &[LinearForm<F>],
        k: usize,
        l: usize,
    ) -> Result<Mat<Complex<F>>> {
        self.check_factors(x)?;
        assert_ne!(k, l);
        let (nk, nl) = (self.shape[k], self.shape[l]);
        let mut out = Mat::from_vec(nk, nl, vec![Complex::new(F::zero(), F::zero()); nk * nl]);
        let mut idx = vec![0usize; self.order()];
        for e in &self.entries {
            let w = idx
                .iter()
                .zip(x)
                .enumerate()
                .filter(|(j, _)| *j != k && *j != l)
                .fold(*e, |acc, (_, (&i, f))| acc * f.coords()[i]);
            out.set(idx[k], idx[l], out.get(idx[k], idx[l]) + w);
            advance(&mut idx, &self.shape);
        }
        Ok(out)
    }
}

fn check_shape(shape: &[usize]) -> Result<usize> {
    if shape.is_empty() {
        return Err(Error::InvalidArgument("tensor shape must be nonempty".into()));
    }
    if let Some(i) = shape.iter().position(|&n| n == 0) {
        return Err(Error::InvalidArgument(format!("shape[{i}] must be positive")));
    }
    Ok(shape.iter().product())
}

/// Row-major odometer step.
pub(crate) fn advance(idx: &mut [usize], shape: &[usize]) {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < shape[pos] {
            return;
        }
        idx[pos] = 0;
    }
}

/// One row-slot set per unordered bipartition of `p` slots into two nonempty
/// groups: smaller side first, ties keep the side containing slot 0. For
/// `p = 3` this is `[[0], [1], [2]]`.
pub fn bipartitions(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=p / 2 {
        for mask in 0u64..(1u64 << p) {
            if mask.count_ones() as usize != size {
                continue;
            }
            if 2 * size == p && mask & 1 == 0 {
                continue;
            }
            out.push((0..p).filter(|&s| mask >> s & 1 == 1).collect());
        }
    }
    // masks enumerate in numeric order; present lexicographically instead
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
