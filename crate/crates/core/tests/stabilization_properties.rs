use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use tensor_deflate::locus::{dl_sample_with_span, odeco_check, OdecoClass};
use tensor_deflate::stabilization::{
    generic_rank, max_isotropic_span, stabilization_step, stabilization_step_big, table_generate, StabQuery,
};

/// Oracle: `C(n, k)` by Pascal's rule over exact rationals.
fn binomial_oracle(n: u64, k: u64) -> BigRational {
    let mut row = vec![BigRational::one()];
    for _ in 0..n {
        let mut next = vec![BigRational::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_else(BigRational::zero)
}

#[test]
fn ceiling_formula_agrees_with_oracle() {
    for n in 2..=12u64 {
        for d in 3..=20u64 {
            let exceptional = (d == 4 && (3..=5).contains(&n)) || (n, d) == (5, 3);
            if exceptional {
                continue;
            }
            let q = binomial_oracle(n + d - 1, d) / BigRational::from_integer(n.into());
            let expected = q.ceil().to_integer().to_u64().unwrap();
            assert_eq!(generic_rank(n, d), expected, "g({n},{d})");
        }
    }
}

#[test]
fn table_is_monotone_in_n() {
    let t = table_generate((4, 10), (3, 15));
    for j in 0..t.d_values.len() {
        for i in 1..t.n_values.len() {
            assert!(t.steps[i][j] >= t.steps[i - 1][j]);
        }
    }
}

#[test]
fn table_matches_big_integers() {
    for n in 4..=10 {
        for d in 3..=15 {
            let q = StabQuery { n, d };
            assert_eq!(BigUint::from(stabilization_step(q).step), stabilization_step_big(q).step);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn step_bounds(n in 1u64..40, d in 1u64..12) {
        let r = stabilization_step(StabQuery { n, d });
        let m = max_isotropic_span(n);
        prop_assert_eq!(r.m, m);
        prop_assert_eq!(r.per_s.len() as u64, m + 1);
        prop_assert_eq!(r.step, r.per_s.iter().map(|t| t.value).max().unwrap());
        prop_assert!(r.step >= n);
        prop_assert!(r.step >= generic_rank(m, d) + n - 2 * m);
        for t in &r.per_s {
            prop_assert_eq!(t.value, t.g_s + n - 2 * t.s);
        }
    }
}

/// A tensor at the stabilization step exists for every maximizing span size.
#[test]
fn step_is_realized_by_samples() {
    for n in 2..=6usize {
        for d in 3..=5usize {
            let r = stabilization_step(StabQuery { n: n as u64, d: d as u64 });
            for s in r.maximizers() {
                let step = r.step as usize;
                let (_, dec) = dl_sample_with_span::<f64>(step, s as usize, n, d, 7).unwrap();
                assert_eq!(dec.len(), step, "n={n} d={d} s={s}");
                assert!(odeco_check(&dec, 1e-10).unwrap() >= OdecoClass::Weak);
            }
        }
    }
}
