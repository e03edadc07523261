//! Exact generic ranks and the stabilization step of the data-locus chain
//! for symmetric tensors in `S^d ℂⁿ`.
//!
//! With `g_s` the generic Waring rank of forms of degree `d` in `s`
//! variables, the chain stabilizes at `max_{0 ≤ s ≤ ⌊n/2⌋} g_s + n − 2s`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive};
use serde::{Deserialize, Serialize};

/// Alexander–Hirschowitz exceptions `(n range, d, value)` other than `d = 2`,
/// checked before the ceiling formula.
enum Exception {
    /// `n` in range, fixed `d`: `g = C(n+1, 2)`.
    Quartics { n_min: u64, n_max: u64, d: u64 },
    /// A single `(n, d)` with a fixed value.
    Single { n: u64, d: u64, g: u64 },
}

const EXCEPTIONS: [Exception; 2] = [
    Exception::Quartics { n_min: 3, n_max: 5, d: 4 },
    Exception::Single { n: 5, d: 3, g: 8 },
];

/// Tabulated range in `(n, d)`; results outside are flagged.
pub const TABLE_N: (u64, u64) = (4, 10);
pub const TABLE_D: (u64, u64) = (3, 15);

fn from_u64<I: FromPrimitive>(v: u64) -> I {
    I::from_u64(v).expect("small integer")
}

/// `C(n, k)` in `I`, `None` on overflow.
fn binomial_in<I>(n: u64, k: u64) -> Option<I>
where
    I: Integer + Clone + CheckedMul + FromPrimitive,
{
    if k > n {
        return Some(I::zero());
    }
    let k = k.min(n - k);
    let mut acc = I::one();
    for i in 1..=k {
        // acc·(n−k+i) is divisible by i since acc = C(n−k+i−1, i−1)
        acc = acc.checked_mul(&from_u64(n - k + i))? / from_u64(i);
    }
    Some(acc)
}

/// Generic rank `g(n, d)` in integer type `I`; `None` on overflow.
///
/// `g(0, d) = 0`, `g(1, d) = 1`, `g(n, 2) = n`, the listed exceptions, and
/// otherwise `⌈C(n+d−1, d) / n⌉`.
pub fn generic_rank_in<I>(n: u64, d: u64) -> Option<I>
where
    I: Integer + Clone + CheckedMul + CheckedAdd + FromPrimitive,
{
    match n {
        0 => return Some(I::zero()),
        1 => return Some(I::one()),
        _ => {}
    }
    if d == 2 {
        return Some(from_u64(n));
    }
    for e in &EXCEPTIONS {
        match *e {
            Exception::Quartics { n_min, n_max, d: ed } if ed == d && (n_min..=n_max).contains(&n) => {
                return binomial_in(n + 1, 2);
            }
            Exception::Single { n: en, d: ed, g } if en == n && ed == d => return Some(from_u64(g)),
            _ => {}
        }
    }
    let c: I = binomial_in(n + d - 1, d)?;
    Some(c.div_ceil(&from_u64(n)))
}

/// Generic rank in 64 bits. Panics on overflow; use [`generic_rank_big`]
/// beyond that.
pub fn generic_rank(n: u64, d: u64) -> u64 {
    generic_rank_in(n, d).expect("generic rank overflows u64")
}

pub fn generic_rank_big(n: u64, d: u64) -> BigUint {
    generic_rank_in(n, d).expect("big integers do not overflow")
}

pub fn max_isotropic_span(n: u64) -> u64 {
    n / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabQuery {
    pub n: u64,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabTerm<I> {
    pub s: u64,
    pub g_s: I,
    /// `g_s + n − 2s`.
    pub value: I,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabResult<I> {
    pub n: u64,
    pub d: u64,
    /// `⌊n/2⌋`.
    pub m: u64,
    pub per_s: Vec<StabTerm<I>>,
    pub step: I,
    /// Whether `(n, d)` lies outside the tabulated range.
    pub outside_table: bool,
}

impl<I: Clone> StabResult<I> {
    /// The `s` values attaining the maximum.
    pub fn maximizers(&self) -> Vec<u64>
    where
        I: PartialEq,
    {
        self.per_s
            .iter()
            .filter(|t| t.value == self.step)
            .map(|t| t.s)
            .collect()
    }
}

pub fn stabilization_step_in<I>(q: StabQuery) -> Option<StabResult<I>>
where
    I: Integer + Clone + CheckedMul + CheckedAdd + FromPrimitive,
{
    let m = max_isotropic_span(q.n);
    let mut per_s = Vec::with_capacity(m as usize + 1);
    for s in 0..=m {
        let g_s: I = generic_rank_in(s, q.d)?;
        let value = g_s.checked_add(&from_u64(q.n - 2 * s))?;
        per_s.push(StabTerm { s, g_s, value });
    }
    let step = per_s
        .iter()
        .map(|t| t.value.clone())
        .max()
        .unwrap_or_else(I::zero);
    let outside_table = !((TABLE_N.0..=TABLE_N.1).contains(&q.n) && (TABLE_D.0..=TABLE_D.1).contains(&q.d));
    Some(StabResult {
        n: q.n,
        d: q.d,
        m,
        per_s,
        step,
        outside_table,
    })
}

/// Stabilization step in 64-bit arithmetic. Panics on overflow.
pub fn stabilization_step(q: StabQuery) -> StabResult<u64> {
    stabilization_step_in(q).expect("stabilization step overflows u64")
}

pub fn stabilization_step_big(q: StabQuery) -> StabResult<BigUint> {
    stabilization_step_in(q).expect("big integers do not overflow")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabTable {
    pub n_values: Vec<u64>,
    pub d_values: Vec<u64>,
    /// `steps[i][j]` for `n_values[i]`, `d_values[j]`.
    pub steps: Vec<Vec<u64>>,
}

impl StabTable {
    pub fn get(&self, n: u64, d: u64) -> Option<u64> {
        let i = self.n_values.iter().position(|&v| v == n)?;
        let j = self.d_values.iter().position(|&v| v == d)?;
        Some(self.steps[i][j])
    }

    /// Whether any cell lies outside the tabulated range.
    pub fn outside_table(&self) -> bool {
        let n_ok = self.n_values.iter().all(|n| (TABLE_N.0..=TABLE_N.1).contains(n));
        let d_ok = self.d_values.iter().all(|d| (TABLE_D.0..=TABLE_D.1).contains(d));
        !(n_ok && d_ok)
    }

    /// Header row `n\d,<degrees>`, then one row per `n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n\\d");
        for d in &self.d_values {
            let _ = write!(out, ",{d}");
        }
        out.push('\n');
        for (n, row) in self.n_values.iter().zip(&self.steps) {
            let _ = write!(out, "{n}");
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    /// Right-aligned text table with the same content as the CSV.
    pub fn to_ascii(&self) -> String {
        let width = self
            .steps
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .chain(self.d_values.iter().map(|d| d.to_string().len()))
            .chain(std::iter::once(3))
            .max()
            .unwrap_or(3);
        let mut out = format!("{:>width$}", "n\\d");
        for d in &self.d_values {
            let _ = write!(out, " {d:>width$}");
        }
        out.push('\n');
        for (n, row) in self.n_values.iter().zip(&self.steps) {
            let _ = write!(out, "{n:>width$}");
            for v in row {
                let _ = write!(out, " {v:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

/// Stabilization steps over the inclusive ranges.
pub fn table_generate(n_range: (u64, u64), d_range: (u64, u64)) -> StabTable {
    let n_values: Vec<u64> = (n_range.0..=n_range.1).collect();
    let d_values: Vec<u64> = (d_range.0..=d_range.1).collect();
    let steps = n_values
        .iter()
        .map(|&n| {
            d_values
                .iter()
                .map(|&d| stabilization_step(StabQuery { n, d }).step)
                .collect()
        })
        .collect();
    StabTable {
        n_values,
        d_values,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(3, 4), 6);
        assert_eq!(generic_rank(5, 3), 8);
        assert_eq!(generic_rank(4, 2), 4);
        assert_eq!(generic_rank(2, 5), 3);
        assert_eq!(generic_rank(0, 7), 0);
        assert_eq!(generic_rank(1, 7), 1);
        assert_eq!(generic_rank(4, 4), 10);
        assert_eq!(generic_rank(5, 4), 15);
        // no exception at n = 6, d = 4: ⌈C(9,4)/6⌉ = ⌈126/6⌉
        assert_eq!(generic_rank(6, 4), 21);
    }

    #[test]
    fn isotropic_span() {
        assert_eq!(max_isotropic_span(2), 1);
        assert_eq!(max_isotropic_span(7), 3);
        assert_eq!(max_isotropic_span(0), 0);
    }

    #[test]
    fn step_examples() {
        let step = |n, d| stabilization_step(StabQuery { n, d }).step;
        assert_eq!(step(4, 3), 4);
        assert_eq!(step(6, 6), 10);
        assert_eq!(step(10, 15), 776);
        assert_eq!(step(8, 8), 42);
        assert_eq!(step(5, 8), 6);
        assert_eq!(step(9, 10), 73);
        let r = stabilization_step(StabQuery { n: 4, d: 3 });
        assert_eq!(r.m, 2);
        assert_eq!(r.per_s.len(), 3);
        assert!(!r.outside_table);
        assert!(stabilization_step(StabQuery { n: 2, d: 3 }).outside_table);
        assert_eq!(stabilization_step(StabQuery { n: 2, d: 9 }).step, 2);
    }

    #[test]
    fn csv_layout() {
        let t = table_generate((4, 5), (3, 4));
        assert_eq!(t.to_csv(), "n\\d,3,4\n4,4,4\n5,5,5\n");
        assert!(t.to_ascii().starts_with("n\\d"));
        assert_eq!(t.get(5, 4), Some(5));
    }

    #[test]
    fn big_integers_agree() {
        for n in 2..=12 {
            for d in 1..=20 {
                let a = stabilization_step(StabQuery { n, d }).step;
                let b = stabilization_step_big(StabQuery { n, d }).step;
                assert_eq!(BigUint::from(a), b);
            }
        }
        // 64-bit overflows well before big integers do
        assert!(generic_rank_in::<u64>(40, 40).is_none());
        assert!(generic_rank_big(40, 40) > BigUint::from(u64::MAX));
    }
}
