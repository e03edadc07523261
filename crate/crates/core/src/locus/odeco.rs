use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{bilinear_form, DenseTensor, LinearForm, RankOneTerm, SymmetricTensor, Tensor};

/// Orthogonality tier of a decomposition, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OdecoClass {
    NotOrthogonal,
    /// Pairwise orthogonal in every slot under the bilinear form.
    Weak,
    /// Weak and no factor is isotropic.
    Strong,
    /// Strong with real factors and scales.
    ClassicalReal,
}

impl std::fmt::Display for OdecoClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OdecoClass::NotOrthogonal => "NotOrthogonal",
            OdecoClass::Weak => "Weak",
            OdecoClass::Strong => "Strong",
            OdecoClass::ClassicalReal => "ClassicalReal",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OdecoTerms<F> {
    Symmetric {
        d: usize,
        terms: Vec<(Complex<F>, LinearForm<F>)>,
    },
    General {
        terms: Vec<(Complex<F>, Vec<LinearForm<F>>)>,
    },
}

/// A sum of scaled rank-one terms, with the tier it was built to satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoDecomposition<F> {
    pub terms: OdecoTerms<F>,
    pub kind: OdecoClass,
}

impl<F: Real> OrthoDecomposition<F> {
    pub fn symmetric(d: usize, terms: Vec<(Complex<F>, LinearForm<F>)>, kind: OdecoClass) -> Self {
        OrthoDecomposition {
            terms: OdecoTerms::Symmetric { d, terms },
            kind,
        }
    }

    pub fn general(terms: Vec<(Complex<F>, Vec<LinearForm<F>>)>, kind: OdecoClass) -> Self {
        OrthoDecomposition {
            terms: OdecoTerms::General { terms },
            kind,
        }
    }

    pub fn len(&self) -> usize {
        match &self.terms {
            OdecoTerms::Symmetric { terms, .. } => terms.len(),
            OdecoTerms::General { terms } => terms.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank_one_terms(&self) -> Result<Vec<RankOneTerm<F>>> {
        match &self.terms {
            OdecoTerms::Symmetric { d, terms } => terms
                .iter()
                .map(|(s, l)| RankOneTerm::veronese(*s, l.clone(), *d))
                .collect(),
            OdecoTerms::General { terms } => terms
                .iter()
                .map(|(s, x)| RankOneTerm::segre(*s, x.clone()))
                .collect(),
        }
    }

    /// The same decomposition with term `i` dropped.
    pub fn without_term(&self, i: usize) -> Self {
        let mut out = self.clone();
        match &mut out.terms {
            OdecoTerms::Symmetric { terms, .. } => {
                terms.remove(i);
            }
            OdecoTerms::General { terms } => {
                terms.remove(i);
            }
        }
        out
    }

    /// Sum of the terms: symmetric for power terms, dense otherwise.
    pub fn to_tensor(&self) -> Result<Tensor<F>> {
        let terms = self.rank_one_terms()?;
        let first = terms.first().ok_or(Error::EmptyFactors)?;
        match &self.terms {
            OdecoTerms::Symmetric { .. } => {
                let mut acc = first.to_symmetric()?;
                for t in &terms[1..] {
                    acc = acc.add(&t.to_symmetric()?)?;
                }
                Ok(Tensor::Symmetric(acc))
            }
            OdecoTerms::General { .. } => {
                let mut acc = first.to_dense()?;
                for t in &terms[1..] {
                    acc = acc.add(&t.to_dense()?)?;
                }
                Ok(Tensor::Dense(acc))
            }
        }
    }

    pub fn to_symmetric(&self) -> Result<SymmetricTensor<F>> {
        match self.to_tensor()? {
            Tensor::Symmetric(s) => Ok(s),
            Tensor::Dense(_) => Err(Error::InvalidArgument("decomposition is not symmetric".into())),
        }
    }

    pub fn to_dense(&self) -> Result<DenseTensor<F>> {
        Ok(self.to_tensor()?.to_dense())
    }

    /// Slot vectors as `slots[j][k]` = factor of term `k` in slot `j`.
    fn slots(&self) -> Result<Vec<Vec<&LinearForm<F>>>> {
        match &self.terms {
            OdecoTerms::Symmetric { terms, .. } => Ok(vec![terms.iter().map(|t| &t.1).collect()]),
            OdecoTerms::General { terms } => {
                let p = terms.first().map_or(0, |t| t.1.len());
                if terms.iter().any(|t| t.1.len() != p) {
                    return Err(Error::InvalidArgument("terms have different orders".into()));
                }
                Ok((0..p).map(|j| terms.iter().map(|t| &t.1[j]).collect()).collect())
            }
        }
    }

    fn scales(&self) -> Vec<Complex<F>> {
        match &self.terms {
            OdecoTerms::Symmetric { terms, .. } => terms.iter().map(|t| t.0).collect(),
            OdecoTerms::General { terms } => terms.iter().map(|t| t.0).collect(),
        }
    }
}

/// The strongest tier whose conditions hold at relative tolerance `tol`.
///
/// Orthogonality of `a, b` means `|⟨a,b⟩| ≤ tol·‖a‖‖b‖`; isotropy of `a`
/// means `|⟨a,a⟩| ≤ tol·‖a‖²`.
pub fn odeco_check<F: Real>(dec: &OrthoDecomposition<F>, tol: F) -> Result<OdecoClass> {
    if dec.is_empty() {
        return Err(Error::EmptyFactors);
    }
    let slots = dec.slots()?;
    for slot in &slots {
        if let Some(k) = slot.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroFactor(k));
        }
    }
    for slot in &slots {
        for (k, a) in slot.iter().enumerate() {
            for b in &slot[k + 1..] {
                if bilinear_form(a, b)?.norm() > tol * a.norm() * b.norm() {
                    return Ok(OdecoClass::NotOrthogonal);
                }
            }
        }
    }
    let isotropic = slots
        .iter()
        .flatten()
        .any(|v| v.dot(v).map(|q| q.norm() <= tol * v.norm_sqr()).unwrap_or(false));
    if isotropic {
        return Ok(OdecoClass::Weak);
    }
    let real_factors = slots.iter().flatten().all(|v| v.is_real(tol * v.norm()));
    let real_scales = dec.scales().iter().all(|s| s.im.abs() <= tol * s.norm());
    Ok(if real_factors && real_scales {
        OdecoClass::ClassicalReal
    } else {
        OdecoClass::Strong
    })
}
