use num_complex::Complex;
use proptest::prelude::*;

use tensor_deflate::io::{tensor_from_json, tensor_to_json};
use tensor_deflate::tensor::{power, rank_one, veronese_tangent_residuals};
use tensor_deflate::{DenseTensor, LinearForm, SymmetricTensor, Tensor};

type C = Complex<f64>;

fn c() -> impl Strategy<Value = C> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C::new(a, b))
}

fn form(n: usize) -> impl Strategy<Value = LinearForm<f64>> {
    prop::collection::vec(c(), n).prop_map(|v| LinearForm::new(v).unwrap())
}

fn dot(a: &LinearForm<f64>, b: &LinearForm<f64>) -> C {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum()
}

/// Oracle: `Σ_i a_i b_i` over the materialized arrays.
fn dense_oracle(a: &DenseTensor<f64>, b: &DenseTensor<f64>) -> C {
    a.entries().iter().zip(b.entries()).map(|(x, y)| x * y).sum()
}

fn close(a: C, b: C, scale: f64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + scale)
}

/// Symmetric tensor as a random combination of powers.
fn symmetric(n: usize, d: usize) -> impl Strategy<Value = SymmetricTensor<f64>> {
    prop::collection::vec((c(), form(n)), 1..4).prop_map(move |terms| {
        let mut t = SymmetricTensor::zeros(n, d).unwrap();
        for (s, u) in terms {
            t = t.axpy(s, &power(&u, d).unwrap()).unwrap();
        }
        t
    })
}

fn sym_case() -> impl Strategy<Value = (SymmetricTensor<f64>, SymmetricTensor<f64>, SymmetricTensor<f64>, C, C)> {
    (1usize..5, 1usize..6).prop_flat_map(|(n, d)| (symmetric(n, d), symmetric(n, d), symmetric(n, d), c(), c()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_identity((u, v, d) in (1usize..7).prop_flat_map(|n| (form(n), form(n), 1usize..11))) {
        let lhs = power(&u, d).unwrap().bw_inner(&power(&v, d).unwrap()).unwrap();
        let rhs = dot(&u, &v).powu(d as u32);
        let size = (u.norm() * v.norm()).powi(d as i32);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()) + 1e-13 * size, "{lhs} vs {rhs}");
    }

    #[test]
    fn symmetric_bw_is_bilinear((f, g, h, a, b) in sym_case()) {
        let lhs = f.axpy(a, &g).unwrap().bw_inner(&h).unwrap();
        let lhs2 = h.bw_inner(&f.axpy(a, &g).unwrap()).unwrap();
        let rhs = f.bw_inner(&h).unwrap() + a * g.bw_inner(&h).unwrap();
        let scale = f.norm() * h.norm() + a.norm() * g.norm() * h.norm();
        prop_assert!(close(lhs, rhs, scale));
        prop_assert!(close(lhs, lhs2, scale));
        let s = f.scaled(b).bw_inner(&h).unwrap();
        prop_assert!(close(s, b * f.bw_inner(&h).unwrap(), b.norm() * scale));
    }

    #[test]
    fn symmetric_and_dense_forms_agree((f, g, _, _, _) in sym_case()) {
        let a = f.bw_inner(&g).unwrap();
        let b = dense_oracle(&f.to_dense(), &g.to_dense());
        prop_assert!(close(a, b, f.norm() * g.norm()));
        prop_assert!((f.norm() - f.to_dense().norm()).abs() <= 1e-9 * (1.0 + f.norm()));
    }

    #[test]
    fn rank_one_dense_form_is_product(
        (x, y) in prop::collection::vec(1usize..4, 1..5).prop_flat_map(|shape| {
            let xs: Vec<_> = shape.iter().map(|&n| form(n)).collect();
            let ys: Vec<_> = shape.iter().map(|&n| form(n)).collect();
            (xs, ys)
        })
    ) {
        let a = rank_one(&x).unwrap();
        let b = rank_one(&y).unwrap();
        let expected: C = x.iter().zip(&y).map(|(p, q)| dot(p, q)).product();
        prop_assert!(close(a.bw_inner(&b).unwrap(), expected, a.norm() * b.norm()));
        prop_assert!(close(dense_oracle(&a, &b), expected, a.norm() * b.norm()));
    }

    #[test]
    fn contraction_identity((u, v, w, d) in (1usize..6).prop_flat_map(|n| (form(n), form(n), form(n), 1usize..8))) {
        // ⟨w^d, u^{d-1}·e_k⟩ = ⟨w,u⟩^{d-1} w_k
        let r = veronese_tangent_residuals(&power(&w, d).unwrap(), &u).unwrap();
        let base = dot(&w, &u).powu(d as u32 - 1);
        // cancellation-free size of every term involved
        let size = (w.norm() * u.norm()).powi(d as i32 - 1) * w.norm();
        for (k, rk) in r.iter().enumerate() {
            let e = base * w.coords()[k];
            prop_assert!((rk - e).norm() <= 1e-12 * (1.0 + size));
        }
        // and pairing against v reproduces the polarization ⟨w^d, u^{d-1}v⟩
        let pv: C = r.iter().zip(v.coords()).map(|(a, b)| a * b).sum();
        let e = base * dot(&w, &v);
        prop_assert!((pv - e).norm() <= 1e-12 * (1.0 + size * v.norm()));
    }

    #[test]
    fn json_round_trip_is_exact((f, _, _, _, _) in sym_case()) {
        let t = Tensor::Symmetric(f);
        let s = tensor_to_json(&t);
        let back: Tensor<f64> = tensor_from_json(&s).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(tensor_to_json(&back), s);
        let dense = Tensor::Dense(t.to_dense());
        let s = tensor_to_json(&dense);
        prop_assert_eq!(tensor_to_json(&tensor_from_json::<f64>(&s).unwrap()), s);
    }
}

#[test]
fn f32_matches_f64_on_power_identity() {
    let u = LinearForm::<f32>::from_real(&[0.5, -1.0, 0.25]).unwrap();
    let v = LinearForm::<f32>::from_real(&[1.0, 0.5, 2.0]).unwrap();
    let lhs = power(&u, 4).unwrap().bw_inner(&power(&v, 4).unwrap()).unwrap();
    let dot: f32 = 0.5 - 0.5 + 0.5;
    assert!((lhs.re - dot.powi(4)).abs() < 1e-5);
}

#[test]
fn isotropic_power_is_null() {
    let l = LinearForm::new(vec![C::new(1.0, 0.0), C::new(0.0, 1.0)]).unwrap();
    for d in 1..8 {
        let p = power(&l, d).unwrap();
        assert!(p.bw_inner(&p).unwrap().norm() < 1e-12);
        assert!(p.norm() > 0.0);
    }
}
