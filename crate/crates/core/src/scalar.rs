//! Floating-point abstraction shared by every tensor type.
//!
//! All numerical code is written against [`Real`], which is implemented for
//! `f32` and `f64`. Tensor entries are `Complex<F>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real field used for the real and imaginary parts of tensor entries.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Total for both `f32` and `f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite float converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A complex tensor entry.
pub type Scalar<F> = Complex<F>;

#[inline]
pub fn cplx<F: Real>(re: f64, im: f64) -> Complex<F> {
    Complex::new(F::lit(re), F::lit(im))
}

#[inline]
pub fn real<F: Real>(re: F) -> Complex<F> {
    Complex::new(re, F::zero())
}

#[inline]
pub fn is_finite<F: Real>(z: &Complex<F>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Integer power by repeated squaring; `Complex::powu` is fine but this keeps
/// `0^0 = 1` explicit for multi-index monomials.
#[inline]
pub fn powu<F: Real>(z: Complex<F>, e: u32) -> Complex<F> {
    if e == 0 {
        return Complex::new(F::one(), F::zero());
    }
    z.powu(e)
}

/// Sum of squared moduli.
pub fn norm_sqr<F: Real>(v: &[Complex<F>]) -> F {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Largest modulus, zero for an empty slice.
pub fn max_abs<F: Real>(v: &[Complex<F>]) -> F {
    v.iter().map(|z| z.norm()).fold(F::zero(), F::max)
}

/// Lexicographic comparison on (re, im) pairs. Used for deterministic
/// tie-breaking.
pub fn lex_cmp<F: Real>(a: &[Complex<F>], b: &[Complex<F>]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap_or(Ordering::Equal) {
            Ordering::Equal => {}
            o => return o,
        }
        match x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
