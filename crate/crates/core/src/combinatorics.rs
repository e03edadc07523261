//! Exact binomial/multinomial coefficients and the monomial basis of
//! degree-`d` forms in `n` variables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// `C(n, k)` in 64-bit arithmetic, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) / i stays integral at every step
        acc = acc.checked_mul(n as u128 - k as u128 + i)? / i;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Multinomial `d! / (α₁!·…·α_n!)` with `d = Σα`, `None` on 64-bit overflow.
pub fn multinomial_u64(alpha: &[u32]) -> Option<u64> {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &a in alpha {
        total += a as u64;
        acc = acc.checked_mul(binomial_u64(total, a as u64)?)?;
    }
    Some(acc)
}

pub fn multinomial_big(alpha: &[u32]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &a in alpha {
        total += a as u64;
        acc *= binomial_big(total, a as u64);
    }
    acc
}

/// Multinomial rounded to the nearest `f64`. Exact integer arithmetic is used
/// throughout; the conversion is the only rounding step.
pub fn multinomial_f64(alpha: &[u32]) -> f64 {
    match multinomial_u64(alpha) {
        Some(v) => v as f64,
        None => multinomial_big(alpha).to_f64().unwrap_or(f64::INFINITY),
    }
}

/// Number of exponent vectors of length `n` summing to `d`.
pub fn monomial_count(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial_u64((n + d - 1) as u64, d as u64)
        .and_then(|v| usize::try_from(v).ok())
        .expect("monomial count fits in usize")
}

/// All exponent vectors of length `n` summing to `d`, lexicographically
/// descending: `(d,0,…,0)` first, `(0,…,0,d)` last.
pub fn exponents_desc(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, rem: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(rem);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=rem).rev() {
            prefix.push(a);
            rec(n, rem - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(n, d));
    if n > 0 {
        rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Position of `alpha` in [`exponents_desc`] order, or `None` if it is not a
/// valid exponent vector of that shape.
pub fn exponent_rank(n: usize, d: usize, alpha: &[u32]) -> Option<usize> {
    if alpha.len() != n || alpha.iter().map(|&a| a as usize).sum::<usize>() != d {
        return None;
    }
    let mut rank = 0;
    let mut rem = d;
    for (i, &a) in alpha.iter().enumerate().take(n.saturating_sub(1)) {
        let a = a as usize;
        // every vector whose i-th entry exceeds `a` comes first
        for v in (a + 1)..=rem {
            rank += monomial_count(n - i - 1, rem - v);
        }
        rem -= a;
    }
    Some(rank)
}

/// Exponent vectors and their multinomial weights for one `(n, d)`.
#[derive(Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub d: usize,
    pub exponents: Vec<Vec<u32>>,
    /// `C(d, α)` as the nearest `f64`.
    pub weights: Vec<f64>,
}

impl MonomialBasis {
    fn build(n: usize, d: usize) -> Self {
        let exponents = exponents_desc(n, d);
        let weights = exponents.iter().map(|a| multinomial_f64(a)).collect();
        MonomialBasis {
            n,
            d,
            exponents,
            weights,
        }
    }

    /// Shared, cached basis for `(n, d)`.
    pub fn get(n: usize, d: usize) -> Arc<MonomialBasis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("basis cache poisoned");
        guard
            .entry((n, d))
            .or_insert_with(|| Arc::new(MonomialBasis::build(n, d)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn rank(&self, alpha: &[u32]) -> Option<usize> {
        exponent_rank(self.n, self.d, alpha)
    }
}
