//! The three components of the second data locus of 2×2×2 tensors.
//!
//! Coordinates follow the hyperdeterminant convention `x₁ = a₀₀₀, …,
//! x₈ = a₁₁₁`. Each quadric is a sum of 2×2 slice determinants and factors on
//! rank-two tensors `x⊗y⊗z + x'⊗y'⊗z'` as one slot's bilinear form times the
//! determinants `[x x']`, `[y y']`, `[z z']` of the other two:
//!
//! * `Q_A = −x₂x₅ + x₁x₆ − x₄x₇ + x₃x₈ = ⟨y,y'⟩·det[x x']·det[z z']`
//! * `Q_B = −x₂x₃ + x₁x₄ − x₆x₇ + x₅x₈ = ⟨x,x'⟩·det[y y']·det[z z']`
//! * `Q_C = −x₃x₅ − x₄x₆ + x₁x₇ + x₂x₈ = ⟨z,z'⟩·det[x x']·det[y y']`

use num_complex::Complex;
use num_traits::Num;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::odeco::{OdecoClass, OrthoDecomposition};
use crate::deflation::coords_222;
use crate::error::Result;
use crate::rng::stream;
use crate::scalar::Real;
use crate::tensor::{DenseTensor, LinearForm};

/// Quadrics as four `(sign, i, j)` monomials `±x_i x_j` (0-based).
pub const DL2_QUADRICS: [[(i8, usize, usize); 4]; 3] = [
    [(-1, 1, 4), (1, 0, 5), (-1, 3, 6), (1, 2, 7)],
    [(-1, 1, 2), (1, 0, 3), (-1, 5, 6), (1, 4, 7)],
    [(-1, 2, 4), (-1, 3, 5), (1, 0, 6), (1, 1, 7)],
];

/// Quadric pairs cutting out each component.
pub const DL2_COMPONENTS: [[usize; 2]; 3] = [[0, 1], [0, 2], [1, 2]];

/// Slot (0-based) whose orthogonality kills each quadric.
pub const QUADRIC_SLOT: [usize; 3] = [1, 0, 2];

pub fn dl2_quadric<R: Num + Clone>(q: usize, x: &[R; 8]) -> R {
    DL2_QUADRICS[q].iter().fold(R::zero(), |acc, &(s, i, j)| {
        let m = x[i].clone() * x[j].clone();
        if s < 0 {
            acc - m
        } else {
            acc + m
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dl2Membership {
    pub component1: bool,
    pub component2: bool,
    pub component3: bool,
}

impl Dl2Membership {
    pub fn as_array(&self) -> [bool; 3] {
        [self.component1, self.component2, self.component3]
    }

    pub fn count(&self) -> usize {
        self.as_array().iter().filter(|b| **b).count()
    }
}

/// Each component holds iff both of its quadrics are at most `tol·‖T‖²` in
/// modulus.
pub fn dl2_membership_222<F: Real>(t: &DenseTensor<F>, tol: F) -> Result<Dl2Membership> {
    let x = coords_222(t)?;
    let band = tol * t.norm().powi(2);
    let vanish: Vec<bool> = (0..3).map(|q| dl2_quadric(q, &x).norm() <= band).collect();
    let c = |k: usize| DL2_COMPONENTS[k].iter().all(|&q| vanish[q]);
    Ok(Dl2Membership {
        component1: c(0),
        component2: c(1),
        component3: c(2),
    })
}

/// Components predicted for a rank-two tensor orthogonal in exactly the
/// slots flagged in `orthogonal` (generic otherwise).
pub fn predicted_components(orthogonal: [bool; 3]) -> Dl2Membership {
    let vanish: Vec<bool> = QUADRIC_SLOT.iter().map(|&s| orthogonal[s]).collect();
    let c = |k: usize| DL2_COMPONENTS[k].iter().all(|&q| vanish[q]);
    Dl2Membership {
        component1: c(0),
        component2: c(1),
        component3: c(2),
    }
}

fn gaussian_pair<R: Rng + ?Sized>(rng: &mut R, complex: bool) -> [Complex<f64>; 2] {
    let mut draw = || {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
        Complex::new(re, im)
    };
    [draw(), draw()]
}

/// Random `x⊗y⊗z + c·x'⊗y'⊗z'` orthogonal in the flagged slots, where the
/// second factor of an orthogonal slot is `(−v₁, v₀)` times a random scalar.
/// With `complex` the factors and `c` are complex Gaussian.
pub fn rank_two_sample_222(
    orthogonal: [bool; 3],
    complex: bool,
    seed: u64,
) -> Result<(DenseTensor<f64>, OrthoDecomposition<f64>)> {
    let mut rng = stream(seed, 0);
    let mut first = Vec::with_capacity(3);
    let mut second = Vec::with_capacity(3);
    for &orth in &orthogonal {
        let v = gaussian_pair(&mut rng, complex);
        let w = if orth {
            let s = gaussian_pair(&mut rng, complex)[0];
            [-v[1] * s, v[0] * s]
        } else {
            gaussian_pair(&mut rng, complex)
        };
        first.push(LinearForm::new(v.to_vec())?);
        second.push(LinearForm::new(w.to_vec())?);
    }
    let c = gaussian_pair(&mut rng, complex)[0];
    let all = orthogonal.iter().all(|b| *b);
    let kind = if !all {
        OdecoClass::NotOrthogonal
    } else if complex {
        OdecoClass::Weak
    } else {
        OdecoClass::ClassicalReal
    };
    let dec = OrthoDecomposition::general(
        vec![(Complex::new(1.0, 0.0), first), (c, second)],
        kind,
    );
    Ok((dec.to_dense()?, dec))
}
