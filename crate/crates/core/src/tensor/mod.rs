//! Tensor value types and the Bombieri-Weyl form.

mod dense;
mod linear_form;
mod symmetric;
mod term;

pub use dense::{bipartitions, DenseTensor};
pub(crate) use dense::advance;
pub use linear_form::{bilinear_form, is_isotropic, LinearForm};
pub use symmetric::SymmetricTensor;
pub use term::RankOneTerm;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Either tensor representation; the unit handed to searches and chains.
#[derive(Clone, Debug)]
pub enum Tensor<F> {
    Dense(DenseTensor<F>),
    Symmetric(SymmetricTensor<F>),
}

impl<F: Real> PartialEq for Tensor<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Tensor::Dense(a), Tensor::Dense(b)) => a == b,
            (Tensor::Symmetric(a), Tensor::Symmetric(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Real> Tensor<F> {
    pub fn norm(&self) -> F {
        match self {
            Tensor::Dense(t) => t.norm(),
            Tensor::Symmetric(t) => t.norm(),
        }
    }

    pub fn max_imag(&self) -> F {
        match self {
            Tensor::Dense(t) => t.max_imag(),
            Tensor::Symmetric(t) => t.max_imag(),
        }
    }

    /// `self - term`, in the representation of `self`. A Segre term cannot be
    /// subtracted from a symmetric tensor.
    pub fn sub_term(&self, term: &RankOneTerm<F>) -> Result<Self> {
        match self {
            Tensor::Dense(t) => Ok(Tensor::Dense(t.sub(&term.to_dense()?)?)),
            Tensor::Symmetric(t) => Ok(Tensor::Symmetric(t.sub(&term.to_symmetric()?)?)),
        }
    }

    pub fn to_dense(&self) -> DenseTensor<F> {
        match self {
            Tensor::Dense(t) => t.clone(),
            Tensor::Symmetric(t) => t.to_dense(),
        }
    }
}

impl<F> From<DenseTensor<F>> for Tensor<F> {
    fn from(t: DenseTensor<F>) -> Self {
        Tensor::Dense(t)
    }
}

impl<F> From<SymmetricTensor<F>> for Tensor<F> {
    fn from(t: SymmetricTensor<F>) -> Self {
        Tensor::Symmetric(t)
    }
}

pub fn bw_inner_symmetric<F: Real>(
    f: &SymmetricTensor<F>,
    g: &SymmetricTensor<F>,
) -> Result<Complex<F>> {
    f.bw_inner(g)
}

pub fn bw_inner_dense<F: Real>(s: &DenseTensor<F>, t: &DenseTensor<F>) -> Result<Complex<F>> {
    s.bw_inner(t)
}

pub fn power<F: Real>(u: &LinearForm<F>, d: usize) -> Result<SymmetricTensor<F>> {
    SymmetricTensor::power(u, d)
}

pub fn rank_one<F: Real>(factors: &[LinearForm<F>]) -> Result<DenseTensor<F>> {
    DenseTensor::rank_one(factors)
}

/// `⟨T, l^{d-1}·e_k⟩` for each `k`; all vanish iff `T ⟂ T_{l^d}X`.
pub fn veronese_tangent_residuals<F: Real>(
    t: &SymmetricTensor<F>,
    l: &LinearForm<F>,
) -> Result<Vec<Complex<F>>> {
    t.contract_vector(l)
}

/// `⟨T, x₁⊗…⊗e_i⊗…⊗x_p⟩` for every slot `k` and basis vector `e_i` of that
/// slot, slot-major. All vanish iff `T ⟂ T_xX`.
pub fn segre_tangent_residuals<F: Real>(
    t: &DenseTensor<F>,
    x: &[LinearForm<F>],
) -> Result<Vec<Complex<F>>> {
    if x.is_empty() {
        return Err(Error::EmptyFactors);
    }
    if let Some(k) = x.iter().position(|f| f.is_zero()) {
        return Err(Error::ZeroFactor(k));
    }
    let mut out = Vec::with_capacity(t.shape().iter().sum());
    for k in 0..x.len() {
        out.extend(t.contract_except(x, k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::max_abs;

    type C = Complex<f64>;

    fn lf(v: &[(f64, f64)]) -> LinearForm<f64> {
        LinearForm::new(v.iter().map(|&(a, b)| C::new(a, b)).collect()).unwrap()
    }

    fn re(v: &[f64]) -> LinearForm<f64> {
        LinearForm::from_real(v).unwrap()
    }

    fn e(n: usize, k: usize) -> LinearForm<f64> {
        LinearForm::basis(n, k)
    }

    #[test]
    fn bilinear_form_examples() {
        let iso = lf(&[(1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(bilinear_form(&iso, &iso).unwrap(), C::new(0.0, 0.0));
        assert_eq!(bilinear_form(&e(2, 0), &e(2, 1)).unwrap(), C::new(0.0, 0.0));
        assert_eq!(
            bilinear_form(&re(&[2.0, 3.0]), &re(&[1.0, 1.0])).unwrap(),
            C::new(5.0, 0.0)
        );
        assert!(matches!(
            bilinear_form(&e(2, 0), &e(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic(&lf(&[(1.0, 0.0), (0.0, 1.0)]), 1e-10));
        assert!(!is_isotropic(&e(2, 0), 1e-10));
        let w1 = lf(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!(is_isotropic(&w1, 1e-10));
    }

    #[test]
    fn bw_symmetric_examples() {
        let p = power(&e(2, 0), 3).unwrap();
        assert_eq!(bw_inner_symmetric(&p, &p).unwrap(), C::new(1.0, 0.0));

        let iso = power(&lf(&[(1.0, 0.0), (0.0, 1.0)]), 5).unwrap();
        assert!(bw_inner_symmetric(&iso, &iso).unwrap().norm() < 1e-12);

        let f = power(&re(&[1.0, 1.0]), 2).unwrap();
        let g = power(&re(&[1.0, -1.0]), 2).unwrap();
        // scaled basis: f = (1,1,1), g = (1,-1,1), weights (1,2,1)
        assert_eq!(f.coeffs(), &[C::new(1.0, 0.0); 3]);
        assert_eq!(g.coeff(&[1, 1]).unwrap(), C::new(-1.0, 0.0));
        let by_hand = 1.0 * 1.0 * 1.0 + 2.0 * 1.0 * -1.0 + 1.0 * 1.0 * 1.0;
        assert_eq!(by_hand, 0.0);
        assert_eq!(bw_inner_symmetric(&f, &g).unwrap(), C::new(0.0, 0.0));
        assert!(matches!(
            bw_inner_symmetric(&f, &p),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn bw_dense_examples() {
        let t000 = rank_one(&[e(2, 0), e(2, 0), e(2, 0)]).unwrap();
        let t001 = rank_one(&[e(2, 0), e(2, 0), e(2, 1)]).unwrap();
        assert_eq!(bw_inner_dense(&t000, &t000).unwrap(), C::new(1.0, 0.0));
        assert_eq!(bw_inner_dense(&t000, &t001).unwrap(), C::new(0.0, 0.0));

        let x = rank_one(&[lf(&[(1.0, 0.0), (0.0, 1.0)]), e(2, 0)]).unwrap();
        // entrywise: 1·1 + i·i = 0
        assert_eq!(x.entries()[0] * x.entries()[0] + x.entries()[2] * x.entries()[2], C::new(0.0, 0.0));
        assert_eq!(bw_inner_dense(&x, &x).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn power_examples() {
        let p = power(&e(2, 0), 3).unwrap();
        assert_eq!(p.coeff(&[3, 0]).unwrap(), C::new(1.0, 0.0));
        assert!(p.coeffs()[1..].iter().all(|z| *z == C::new(0.0, 0.0)));

        let p = power(&re(&[0.0, 2.0]), 2).unwrap();
        assert_eq!(p.coeff(&[0, 2]).unwrap(), C::new(4.0, 0.0));
        assert_eq!(p.coeff(&[1, 1]).unwrap(), C::new(0.0, 0.0));
        assert!(matches!(power(&e(2, 0), 0), Err(Error::InvalidDegree(0))));
    }

    #[test]
    fn rank_one_examples() {
        let t = rank_one(&[e(2, 1), e(2, 1)]).unwrap();
        assert_eq!(t.get(&[1, 1]), C::new(1.0, 0.0));
        assert_eq!(t.norm(), 1.0);

        let t = rank_one(&[re(&[1.0, 1.0]), re(&[1.0, -1.0])]).unwrap();
        let want = [1.0, -1.0, 1.0, -1.0];
        for (z, w) in t.entries().iter().zip(want) {
            assert_eq!(*z, C::new(w, 0.0));
        }
        assert!(matches!(rank_one::<f64>(&[]), Err(Error::EmptyFactors)));
    }

    #[test]
    fn veronese_residual_examples() {
        let t = power(&e(3, 2), 3).unwrap();
        let r = veronese_tangent_residuals(&t, &e(3, 1)).unwrap();
        assert_eq!(max_abs(&r), 0.0);

        let iso = lf(&[(1.0, 0.0), (0.0, 1.0)]);
        let t = power(&iso, 3).unwrap();
        let r = veronese_tangent_residuals(&t, &iso).unwrap();
        assert!(max_abs(&r) < 1e-14);

        // T = e₀², l = (1,1): T·l = ⟨l, e₀⟩·e₀ = (1, 0)
        let t = power(&e(2, 0), 2).unwrap();
        let r = veronese_tangent_residuals(&t, &re(&[1.0, 1.0])).unwrap();
        assert_eq!(r, vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
    }

    #[test]
    fn segre_residual_examples() {
        let x = vec![e(2, 0), e(2, 0), e(2, 0)];

        let t = rank_one(&[e(2, 1), e(2, 1), e(2, 1)]).unwrap();
        let r = segre_tangent_residuals(&t, &x).unwrap();
        assert_eq!(r.len(), 6);
        assert_eq!(max_abs(&r), 0.0);

        // T = x: the residual in slot k at basis e₀ is Π_{j≠k}⟨x_j,x_j⟩ = 1
        let t = rank_one(&x).unwrap();
        let r = segre_tangent_residuals(&t, &x).unwrap();
        let want = [1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
        for (z, w) in r.iter().zip(want) {
            assert_eq!(*z, C::new(w, 0.0));
        }

        let t = rank_one(&[e(2, 0), e(2, 1), e(2, 1)]).unwrap();
        assert_eq!(max_abs(&segre_tangent_residuals(&t, &x).unwrap()), 0.0);

        let zero = LinearForm::from_real(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            segre_tangent_residuals(&t, &[e(2, 0), zero, e(2, 0)]),
            Err(Error::ZeroFactor(1))
        ));
    }

    #[test]
    fn symmetric_to_dense_preserves_inner_products() {
        let u = lf(&[(0.3, -0.2), (1.1, 0.4), (-0.7, 0.9)]);
        let v = lf(&[(0.5, 0.1), (-0.2, 0.3), (0.8, -0.6)]);
        let f = power(&u, 4).unwrap();
        let g = power(&v, 4).unwrap().add(&power(&u, 4).unwrap().scaled(C::new(0.0, 2.0))).unwrap();
        let a = bw_inner_symmetric(&f, &g).unwrap();
        let b = bw_inner_dense(&f.to_dense(), &g.to_dense()).unwrap();
        assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        assert!((f.norm() - f.to_dense().norm()).abs() < 1e-12);
    }

    #[test]
    fn bipartitions_cover_each_split_once() {
        assert_eq!(bipartitions(2), vec![vec![0]]);
        assert_eq!(bipartitions(3), vec![vec![0], vec![1], vec![2]]);
        let b4 = bipartitions(4);
        assert_eq!(b4.len(), 7);
        assert!(b4.contains(&vec![0, 3]) && !b4.contains(&vec![1, 2]));
    }
}
