use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use super::frame::{isotropic_frame, IsotropicFrame};
use super::odeco::{OdecoClass, OrthoDecomposition};
use crate::critical::verify_critical_symmetric;
use crate::error::{Error, Result};
use crate::linalg::{apply_real, haar_orthogonal};
use crate::rng::{child_seed, stream};
use crate::scalar::Real;
use crate::tensor::{LinearForm, RankOneTerm, SymmetricTensor};

/// Residual bound used by [`isotropic_span_criticality`].
pub const SPAN_CRITICALITY_TOL: f64 = 1e-10;

fn complex_gaussian<F: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<F> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(F::lit(re), F::lit(im))
}

/// Random element of the span of `frame`.
fn span_element<F: Real, R: Rng + ?Sized>(frame: &IsotropicFrame<F>, rng: &mut R) -> Result<LinearForm<F>> {
    let coeffs: Vec<Complex<F>> = (0..frame.len()).map(|_| complex_gaussian(rng)).collect();
    let terms: Vec<_> = coeffs.iter().copied().zip(frame.vectors()).collect();
    LinearForm::combination(&terms)
}

fn check_span(s: usize, t: usize, n: usize, d: usize) -> Result<()> {
    if d < 1 {
        return Err(Error::InvalidDegree(d));
    }
    if n < 1 || 2 * s > n || t > n - 2 * s {
        return Err(Error::Infeasible(format!(
            "(s={s}, t={t}) needs s <= n/2 and t <= n - 2s with n = {n}"
        )));
    }
    if s + t == 0 {
        return Err(Error::Infeasible("at least one term is required".into()));
    }
    Ok(())
}

/// Frame of size `s` and `t` real orthonormal vectors orthogonal to it, all
/// under one Haar rotation of `ℝⁿ`.
fn rotated_pieces<F: Real, R: Rng + ?Sized>(
    s: usize,
    t: usize,
    n: usize,
    rng: &mut R,
) -> Result<(IsotropicFrame<F>, Vec<LinearForm<F>>)> {
    let q = haar_orthogonal::<F, _>(n, rng);
    let frame = if s > 0 {
        isotropic_frame::<F>(n)?.prefix(s).rotated(&q)
    } else {
        IsotropicFrame::from_vectors_unchecked(Vec::new())
    };
    let reals = (0..t)
        .map(|j| LinearForm::new(apply_real(&q, LinearForm::<F>::basis(n, 2 * s + j).coords())))
        .collect::<Result<Vec<_>>>()?;
    Ok((frame, reals))
}

/// `f = Σᵢ lᵢ^d + Σⱼ yⱼ^d` with `l₁…l_s` a randomly rotated isotropic frame
/// and `y₁…y_t` real orthonormal vectors orthogonal to it; unit scales.
pub fn weakly_odeco_symmetric<F: Real>(
    s: usize,
    t: usize,
    n: usize,
    d: usize,
    seed: u64,
) -> Result<(SymmetricTensor<F>, OrthoDecomposition<F>)> {
    check_span(s, t, n, d)?;
    let mut rng = stream(seed, 0);
    let (frame, reals) = rotated_pieces::<F, _>(s, t, n, &mut rng)?;
    let one = Complex::new(F::one(), F::zero());
    let terms: Vec<_> = frame
        .vectors()
        .iter()
        .chain(&reals)
        .map(|v| (one, v.clone()))
        .collect();
    let kind = if s > 0 { OdecoClass::Weak } else { OdecoClass::ClassicalReal };
    let dec = OrthoDecomposition::symmetric(d, terms, kind);
    Ok((dec.to_symmetric()?, dec))
}

/// A weakly odeco tensor of rank at most `r` whose isotropic part lives in
/// a rotated frame of size `s`: `min(r − 1, n − 2s)` real orthonormal terms
/// with random scales in `[0.5, 2]` (all `r` when `s = 0`) and the remaining
/// terms powers of random elements of the frame's span.
pub fn dl_sample_with_span<F: Real>(
    r: usize,
    s: usize,
    n: usize,
    d: usize,
    seed: u64,
) -> Result<(SymmetricTensor<F>, OrthoDecomposition<F>)> {
    if r < 1 {
        return Err(Error::Infeasible("r must be >= 1".into()));
    }
    if s == 0 && r > n {
        return Err(Error::Infeasible(format!(
            "{r} real orthogonal terms do not fit in dimension {n}"
        )));
    }
    let t = if s == 0 { r } else { (r - 1).min(n.saturating_sub(2 * s)) };
    check_span(s, t, n, d)?;
    let mut rng = stream(seed, 0);
    let (frame, reals) = rotated_pieces::<F, _>(s, t, n, &mut rng)?;
    let mut terms = Vec::with_capacity(r);
    for _ in 0..r - t {
        terms.push((Complex::new(F::one(), F::zero()), span_element(&frame, &mut rng)?));
    }
    for y in reals {
        let scale: f64 = rng.random_range(0.5..2.0);
        terms.push((Complex::new(F::lit(scale), F::zero()), y));
    }
    let kind = if s > 0 { OdecoClass::Weak } else { OdecoClass::ClassicalReal };
    let dec = OrthoDecomposition::symmetric(d, terms, kind);
    Ok((dec.to_symmetric()?, dec))
}

/// Random weakly odeco tensor of rank at most `r`, with its decomposition.
/// The isotropic span size is drawn uniformly among the feasible ones.
pub fn dl_sample_decomposed<F: Real>(
    r: usize,
    n: usize,
    d: usize,
    seed: u64,
) -> Result<(SymmetricTensor<F>, OrthoDecomposition<F>)> {
    if r < 1 || n < 1 || d < 1 {
        return Err(Error::Infeasible(format!("no samples for r={r}, n={n}, d={d}")));
    }
    let feasible: Vec<usize> = (0..=n / 2).filter(|&s| s > 0 || r <= n).collect();
    if feasible.is_empty() {
        return Err(Error::Infeasible(format!("rank {r} is not reachable in dimension {n}")));
    }
    let mut pick = stream(seed, 1);
    let s = feasible[pick.random_range(0..feasible.len())];
    dl_sample_with_span(r, s, n, d, child_seed(seed, 0))
}

pub fn dl_sample<F: Real>(r: usize, n: usize, d: usize, seed: u64) -> Result<SymmetricTensor<F>> {
    dl_sample_decomposed(r, n, d, seed).map(|x| x.0)
}

/// Largest normalized residual of `f = Σ vᵢ^d` (over the frame) against
/// `c·l^d` for `num_samples` random `l` in the span and `c ∈ {0.5, 1, 2+i}`.
pub fn isotropic_span_max_residual<F: Real>(
    frame: &IsotropicFrame<F>,
    d: usize,
    num_samples: usize,
    seed: u64,
) -> Result<F> {
    if d < 2 {
        return Err(Error::InvalidDegree(d));
    }
    let first = frame.vectors().first().ok_or(Error::EmptyFactors)?;
    let one = Complex::new(F::one(), F::zero());
    let mut f = SymmetricTensor::power(first, d)?;
    for v in &frame.vectors()[1..] {
        f = f.axpy(one, &SymmetricTensor::power(v, d)?)?;
    }
    let scales = [
        Complex::new(F::lit(0.5), F::zero()),
        one,
        Complex::new(F::lit(2.0), F::one()),
    ];
    let mut rng = stream(seed, 0);
    let mut worst = F::zero();
    for _ in 0..num_samples {
        let l = span_element(frame, &mut rng)?;
        if l.is_zero() {
            continue;
        }
        for &c in &scales {
            let term = RankOneTerm::veronese(c, l.clone(), d)?;
            let (_, r) = verify_critical_symmetric(&f, &term, F::one())?;
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// Whether every sampled power of a span element, at every tested scale, is
/// certified critical for the sum of the frame's `d`-th powers.
pub fn isotropic_span_criticality<F: Real>(
    frame: &IsotropicFrame<F>,
    d: usize,
    num_samples: usize,
    seed: u64,
) -> Result<bool> {
    let worst = isotropic_span_max_residual(frame, d, num_samples, seed)?;
    Ok(worst <= F::lit(SPAN_CRITICALITY_TOL))
}
