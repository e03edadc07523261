//! JSON formats for tensors, terms, critical points, decompositions, frames
//! and chain logs.
//!
//! Dense tensors are `{"kind":"dense","shape":[…],"entries":[[re,im],…]}`,
//! row-major with the last index fastest. Symmetric tensors are
//! `{"kind":"symmetric","n":N,"d":D,"coeffs":[{"alpha":[…],"re":r,"im":i},…]}`
//! in the scaled monomial basis, exponents in descending lexicographic order.
//! Readers reject malformed input with [`Error::Format`] naming the first
//! offending field. Floats are written in shortest round-trip form, so
//! write → read → write is bit-exact.

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::critical::CriticalPoint;
use crate::deflation::{DeflationChain, DeflationStep, RankReport};
use crate::error::{Error, Result};
use crate::locus::{IsotropicFrame, OdecoClass, OdecoTerms, OrthoDecomposition};
use crate::scalar::Real;
use crate::tensor::{DenseTensor, LinearForm, RankOneTerm, SymmetricTensor, Tensor};

fn pair<F: Real>(z: &Complex<F>) -> Value {
    json!([z.re.as_f64(), z.im.as_f64()])
}

fn coords<F: Real>(v: &LinearForm<F>) -> Value {
    Value::Array(v.coords().iter().map(pair).collect())
}

pub fn dense_to_value<F: Real>(t: &DenseTensor<F>) -> Value {
    json!({
        "kind": "dense",
        "shape": t.shape(),
        "entries": t.entries().iter().map(pair).collect::<Vec<_>>(),
    })
}

pub fn symmetric_to_value<F: Real>(t: &SymmetricTensor<F>) -> Value {
    let coeffs: Vec<Value> = t
        .exponents()
        .iter()
        .zip(t.coeffs())
        .map(|(alpha, z)| json!({"alpha": alpha, "re": z.re.as_f64(), "im": z.im.as_f64()}))
        .collect();
    json!({"kind": "symmetric", "n": t.n(), "d": t.d(), "coeffs": coeffs})
}

pub fn tensor_to_value<F: Real>(t: &Tensor<F>) -> Value {
    match t {
        Tensor::Dense(d) => dense_to_value(d),
        Tensor::Symmetric(s) => symmetric_to_value(s),
    }
}

/// Compact single-line JSON.
pub fn tensor_to_json<F: Real>(t: &Tensor<F>) -> String {
    tensor_to_value(t).to_string()
}

pub fn term_to_value<F: Real>(term: &RankOneTerm<F>) -> Value {
    match term {
        RankOneTerm::Segre { scale, factors } => json!({
            "kind": "segre",
            "scale": pair(scale),
            "factors": factors.iter().map(coords).collect::<Vec<_>>(),
        }),
        RankOneTerm::Veronese {
            scale,
            form,
            degree,
        } => json!({
            "kind": "veronese",
            "scale": pair(scale),
            "form": coords(form),
            "degree": degree,
        }),
    }
}

pub fn critical_point_to_value<F: Real>(cp: &CriticalPoint<F>) -> Value {
    json!({
        "term": term_to_value(&cp.term),
        "scale": pair(&cp.scale),
        "residual": cp.residual_norm.as_f64(),
        "objective": cp.objective.as_f64(),
        "source": cp.source,
    })
}

pub fn rank_report_to_value(r: &RankReport) -> Value {
    json!({"flattening_ranks": r.flattening_ranks, "hyperdet_sign": r.hyperdet_sign})
}

pub fn decomposition_to_value<F: Real>(dec: &OrthoDecomposition<F>) -> Value {
    match &dec.terms {
        OdecoTerms::Symmetric { d, terms } => json!({
            "kind": "symmetric",
            "n": terms.first().map_or(0, |t| t.1.n()),
            "d": d,
            "class": dec.kind,
            "terms": terms
                .iter()
                .map(|(s, l)| json!({"scale": pair(s), "form": coords(l)}))
                .collect::<Vec<_>>(),
        }),
        OdecoTerms::General { terms } => json!({
            "kind": "dense",
            "shape": terms.first().map_or(vec![], |t| t.1.iter().map(|f| f.n()).collect()),
            "class": dec.kind,
            "terms": terms
                .iter()
                .map(|(s, x)| json!({"scale": pair(s), "factors": x.iter().map(coords).collect::<Vec<_>>()}))
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn frame_to_value<F: Real>(frame: &IsotropicFrame<F>) -> Value {
    json!({
        "n": frame.n(),
        "vectors": frame.vectors().iter().map(coords).collect::<Vec<_>>(),
    })
}

pub fn step_to_value<F: Real>(index: usize, step: &DeflationStep<F>) -> Value {
    json!({
        "step": index,
        "norm_before": step.norm_before.as_f64(),
        "norm_after": step.norm_after.as_f64(),
        "candidates": step.candidates,
        "chosen": critical_point_to_value(&step.chosen),
        "rank": rank_report_to_value(&step.rank),
    })
}

/// One line per step, then a closing line with the termination record.
pub fn chain_to_jsonl<F: Real>(chain: &DeflationChain<F>) -> String {
    let mut out = String::new();
    for (i, s) in chain.steps.iter().enumerate() {
        out.push_str(&step_to_value(i, s).to_string());
        out.push('\n');
    }
    let end = json!({
        "termination": chain.termination,
        "policy": chain.policy.to_string(),
        "steps": chain.len(),
        "initial_norm": chain.initial_norm.as_f64(),
        "final_norm": chain.final_norm.as_f64(),
        "initial_rank": rank_report_to_value(&chain.initial_rank),
    });
    out.push_str(&end.to_string());
    out.push('\n');
    out
}

// ---- readers ----

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::format(join(path, key), "missing"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::format(if path.is_empty() { "$" } else { path }, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::format(path, "expected an array"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::format(path, "expected a non-negative integer"))
}

fn as_float<F: Real>(v: &Value, path: &str) -> Result<F> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::format(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(Error::format(path, "not finite"));
    }
    Ok(F::lit(x))
}

fn as_pair<F: Real>(v: &Value, path: &str) -> Result<Complex<F>> {
    let a = as_array(v, path)?;
    if a.len() != 2 {
        return Err(Error::format(path, "expected [re, im]"));
    }
    Ok(Complex::new(
        as_float(&a[0], &format!("{path}[0]"))?,
        as_float(&a[1], &format!("{path}[1]"))?,
    ))
}

fn as_form<F: Real>(v: &Value, path: &str) -> Result<LinearForm<F>> {
    let a = as_array(v, path)?;
    if a.is_empty() {
        return Err(Error::format(path, "empty vector"));
    }
    let c = a
        .iter()
        .enumerate()
        .map(|(i, z)| as_pair(z, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    LinearForm::new(c).map_err(|e| Error::format(path, e.to_string()))
}

fn kind<'a>(obj: &'a Map<String, Value>, path: &str) -> Result<&'a str> {
    field(obj, path, "kind")?
        .as_str()
        .ok_or_else(|| Error::format(join(path, "kind"), "expected a string"))
}

fn dense_from_object<F: Real>(obj: &Map<String, Value>) -> Result<DenseTensor<F>> {
    let shape_v = as_array(field(obj, "", "shape")?, "shape")?;
    if shape_v.is_empty() {
        return Err(Error::format("shape", "empty shape"));
    }
    let shape = shape_v
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let p = format!("shape[{i}]");
            let n = as_usize(v, &p)?;
            if n == 0 {
                return Err(Error::format(p, "dimensions must be positive"));
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = shape.iter().try_fold(1usize, |a, &b| a.checked_mul(b))
        .ok_or_else(|| Error::format("shape", "too large"))?;
    let entries_v = as_array(field(obj, "", "entries")?, "entries")?;
    if entries_v.len() != expected {
        return Err(Error::format(
            "entries",
            format!("expected {expected} entries for shape {shape:?}, got {}", entries_v.len()),
        ));
    }
    let entries = entries_v
        .iter()
        .enumerate()
        .map(|(i, z)| as_pair(z, &format!("entries[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    DenseTensor::from_entries(shape, entries)
}

fn symmetric_from_object<F: Real>(obj: &Map<String, Value>) -> Result<SymmetricTensor<F>> {
    let n = as_usize(field(obj, "", "n")?, "n")?;
    if n == 0 {
        return Err(Error::format("n", "must be positive"));
    }
    let d = as_usize(field(obj, "", "d")?, "d")?;
    if d == 0 {
        return Err(Error::format("d", "must be positive"));
    }
    let coeffs_v = as_array(field(obj, "", "coeffs")?, "coeffs")?;
    let mut t = SymmetricTensor::<F>::zeros(n, d)?;
    let mut coeffs = t.coeffs().to_vec();
    let mut seen = vec![false; coeffs.len()];
    let basis = crate::combinatorics::MonomialBasis::get(n, d);
    for (i, c) in coeffs_v.iter().enumerate() {
        let p = format!("coeffs[{i}]");
        let o = as_object(c, &p)?;
        let ap = format!("{p}.alpha");
        let alpha = as_array(field(o, &p, "alpha")?, &ap)?
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let x = as_usize(v, &format!("{ap}[{j}]"))?;
                u32::try_from(x).map_err(|_| Error::format(format!("{ap}[{j}]"), "too large"))
            })
            .collect::<Result<Vec<u32>>>()?;
        if alpha.len() != n {
            return Err(Error::format(ap, format!("expected {n} exponents")));
        }
        let k = basis
            .rank(&alpha)
            .ok_or_else(|| Error::format(&ap, format!("exponents must sum to {d}")))?;
        if seen[k] {
            return Err(Error::format(ap, "duplicate exponent"));
        }
        seen[k] = true;
        let re = as_float(field(o, &p, "re")?, &format!("{p}.re"))?;
        let im = as_float(field(o, &p, "im")?, &format!("{p}.im"))?;
        coeffs[k] = Complex::new(re, im);
    }
    t = SymmetricTensor::from_coeff_vec(n, d, coeffs)?;
    Ok(t)
}

pub fn tensor_from_value<F: Real>(v: &Value) -> Result<Tensor<F>> {
    let obj = as_object(v, "")?;
    match kind(obj, "")? {
        "dense" => Ok(Tensor::Dense(dense_from_object(obj)?)),
        "symmetric" => Ok(Tensor::Symmetric(symmetric_from_object(obj)?)),
        other => Err(Error::format("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn tensor_from_json<F: Real>(s: &str) -> Result<Tensor<F>> {
    tensor_from_value(&serde_json::from_str::<Value>(s)?)
}

pub fn term_from_value<F: Real>(v: &Value) -> Result<RankOneTerm<F>> {
    let obj = as_object(v, "")?;
    let scale = match obj.get("scale") {
        Some(s) => as_pair(s, "scale")?,
        None => Complex::new(F::one(), F::zero()),
    };
    match kind(obj, "")? {
        "segre" => {
            let fs = as_array(field(obj, "", "factors")?, "factors")?;
            if fs.is_empty() {
                return Err(Error::format("factors", "empty factor list"));
            }
            let factors = fs
                .iter()
                .enumerate()
                .map(|(i, f)| as_form(f, &format!("factors[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            RankOneTerm::segre(scale, factors)
        }
        "veronese" => {
            let form = as_form(field(obj, "", "form")?, "form")?;
            let degree = as_usize(field(obj, "", "degree")?, "degree")?;
            if degree == 0 {
                return Err(Error::format("degree", "must be positive"));
            }
            RankOneTerm::veronese(scale, form, degree)
        }
        other => Err(Error::format("kind", format!("unknown term kind {other:?}"))),
    }
}

pub fn term_from_json<F: Real>(s: &str) -> Result<RankOneTerm<F>> {
    term_from_value(&serde_json::from_str::<Value>(s)?)
}

pub fn decomposition_from_value<F: Real>(v: &Value) -> Result<OrthoDecomposition<F>> {
    let obj = as_object(v, "")?;
    let class: OdecoClass = match obj.get("class") {
        Some(c) => serde_json::from_value(c.clone()).map_err(|e| Error::format("class", e.to_string()))?,
        None => OdecoClass::Weak,
    };
    let terms_v = as_array(field(obj, "", "terms")?, "terms")?;
    match kind(obj, "")? {
        "symmetric" => {
            let d = as_usize(field(obj, "", "d")?, "d")?;
            let terms = terms_v
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let p = format!("terms[{i}]");
                    let o = as_object(t, &p)?;
                    Ok((
                        as_pair(field(o, &p, "scale")?, &format!("{p}.scale"))?,
                        as_form(field(o, &p, "form")?, &format!("{p}.form"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(OrthoDecomposition::symmetric(d, terms, class))
        }
        "dense" => {
            let terms = terms_v
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let p = format!("terms[{i}]");
                    let o = as_object(t, &p)?;
                    let fp = format!("{p}.factors");
                    let factors = as_array(field(o, &p, "factors")?, &fp)?
                        .iter()
                        .enumerate()
                        .map(|(j, f)| as_form(f, &format!("{fp}[{j}]")))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((as_pair(field(o, &p, "scale")?, &format!("{p}.scale"))?, factors))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(OrthoDecomposition::general(terms, class))
        }
        other => Err(Error::format("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn decomposition_from_json<F: Real>(s: &str) -> Result<OrthoDecomposition<F>> {
    decomposition_from_value(&serde_json::from_str::<Value>(s)?)
}

pub fn frame_from_value<F: Real>(v: &Value, tol: F) -> Result<IsotropicFrame<F>> {
    let obj = as_object(v, "")?;
    let vectors = as_array(field(obj, "", "vectors")?, "vectors")?
        .iter()
        .enumerate()
        .map(|(i, f)| as_form(f, &format!("vectors[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    IsotropicFrame::new(vectors, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{power, rank_one};

    #[test]
    fn dense_layout_is_fixed() {
        let t = rank_one(&[LinearForm::basis(2, 0), LinearForm::from_real(&[0.5, -1.0]).unwrap()]).unwrap();
        let s = tensor_to_json(&Tensor::Dense(t));
        assert_eq!(
            s,
            r#"{"kind":"dense","shape":[2,2],"entries":[[0.5,0.0],[-1.0,0.0],[0.0,0.0],[-0.0,0.0]]}"#
        );
    }

    #[test]
    fn symmetric_layout_is_descending() {
        let t = power(&LinearForm::from_real(&[1.0, 2.0]).unwrap(), 2).unwrap();
        let s = tensor_to_json(&Tensor::Symmetric(t));
        assert_eq!(
            s,
            r#"{"kind":"symmetric","n":2,"d":2,"coeffs":[{"alpha":[2,0],"re":1.0,"im":0.0},{"alpha":[1,1],"re":2.0,"im":0.0},{"alpha":[0,2],"re":4.0,"im":0.0}]}"#
        );
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let t = DenseTensor::from_entries(
            vec![2, 1, 2],
            vec![
                Complex::new(0.1, -1e-300),
                Complex::new(1.0 / 3.0, 2.5),
                Complex::new(-7e12, 0.0),
                Complex::new(f64::MIN_POSITIVE, 1.0),
            ],
        )
        .unwrap();
        let s1 = tensor_to_json(&Tensor::Dense(t.clone()));
        let back: Tensor<f64> = tensor_from_json(&s1).unwrap();
        assert_eq!(back, Tensor::Dense(t));
        assert_eq!(tensor_to_json(&back), s1);
    }

    #[test]
    fn reports_first_offending_field() {
        let cases = [
            (r#"[1,2]"#, "$"),
            (r#"{"shape":[2]}"#, "kind"),
            (r#"{"kind":"cube"}"#, "kind"),
            (r#"{"kind":"dense","shape":[2,0],"entries":[]}"#, "shape[1]"),
            (r#"{"kind":"dense","shape":[2],"entries":[[1,0]]}"#, "entries"),
            (r#"{"kind":"dense","shape":[2],"entries":[[1,0],[1,"x"]]}"#, "entries[1][1]"),
            (r#"{"kind":"symmetric","n":2,"d":2,"coeffs":[{"alpha":[1,0],"re":1,"im":0}]}"#, "coeffs[0].alpha"),
            (r#"{"kind":"symmetric","n":2,"d":2,"coeffs":[{"alpha":[1,1],"re":1}]}"#, "coeffs[0].im"),
            (r#"{"kind":"symmetric","n":2,"coeffs":[]}"#, "d"),
        ];
        for (src, expected) in cases {
            match tensor_from_json::<f64>(src) {
                Err(Error::Format { field, .. }) => assert_eq!(field, expected, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn terms_round_trip() {
        let term = RankOneTerm::veronese(
            Complex::new(2.0, 1.0),
            LinearForm::new(vec![Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)]).unwrap(),
            3,
        )
        .unwrap();
        let v = term_to_value(&term);
        assert_eq!(term_from_value::<f64>(&v).unwrap(), term);
        let seg = RankOneTerm::segre(
            Complex::new(1.0, 0.0),
            vec![LinearForm::basis(2, 0), LinearForm::basis(3, 2)],
        )
        .unwrap();
        assert_eq!(term_from_value::<f64>(&term_to_value(&seg)).unwrap(), seg);
        assert!(matches!(
            term_from_json::<f64>(r#"{"kind":"veronese","form":[[1,0]],"degree":0}"#),
            Err(Error::Format { field, .. }) if field == "degree"
        ));
    }

    #[test]
    fn decompositions_round_trip() {
        let (_, dec) = crate::locus::weakly_odeco_symmetric::<f64>(1, 1, 3, 3, 5).unwrap();
        let v = decomposition_to_value(&dec);
        assert_eq!(decomposition_from_value::<f64>(&v).unwrap(), dec);
        let (_, dec) = crate::locus::rank_two_sample_222([true; 3], false, 1).unwrap();
        let v = decomposition_to_value(&dec);
        assert_eq!(decomposition_from_value::<f64>(&v).unwrap(), dec);
    }

    #[test]
    fn frames_round_trip() {
        let f = crate::locus::isotropic_frame::<f64>(5).unwrap();
        let v = frame_to_value(&f);
        assert_eq!(frame_from_value(&v, 1e-10).unwrap(), f);
    }
}
