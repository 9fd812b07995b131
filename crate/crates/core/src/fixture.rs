//! JSON fixture files.
//!
//! Rank-3 tensors and two-leg gauges are lists of sparse entries
//! `[i, j, k, "c"]`; vectors are dense coefficient lists. The antipode entry
//! `[i, j, "c"]` is the `e_j` coefficient of `S(e_i)`, matching the
//! input-first order of `mult`. Saving writes sorted keys and sorted entries,
//! so `save ∘ load` is the identity on files written by `save`.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::algebra::{normalize_alpha_beta, GaugeTransformation, QuasiBialgebra, QuasiHopfAlgebra};
use crate::dual::DualQuasiHopfAlgebra;
use crate::dual_integrals::RightComodule;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{format_scalar, FieldSpec, Fp, Rational, Scalar, ScalarParseError};
use crate::tensor::{Element, Functional, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    /// Rescale `α`, `β` so that `ε(α) = ε(β) = 1` (dual: `α(1) = β(1) = 1`).
    pub normalize: bool,
    /// Reject coefficients not written in the canonical form of the declared field.
    pub field_check: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            normalize: true,
            field_check: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fixture<S> {
    QuasiHopf(QuasiHopfAlgebra<S>),
    DualQuasiHopf(DualQuasiHopfAlgebra<S>),
    Comodule { over: String, comodule: RightComodule<S> },
    Gauge(GaugeTransformation<S>),
    Subspace(Subspace<S>),
}

impl<S> Fixture<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::QuasiHopf(_) => "quasi_hopf",
            Fixture::DualQuasiHopf(_) => "dual_quasi_hopf",
            Fixture::Comodule { .. } => "comodule",
            Fixture::Gauge(_) => "gauge",
            Fixture::Subspace(_) => "subspace",
        }
    }
}

/// A fixture in whichever field its file declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyFixture {
    Rational(Fixture<Rational>),
    Prime(Fixture<Fp>, u64),
}

impl AnyFixture {
    pub fn field(&self) -> FieldSpec {
        match self {
            AnyFixture::Rational(_) => FieldSpec::Rational,
            AnyFixture::Prime(_, p) => FieldSpec::Prime { p: *p },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyFixture::Rational(f) => f.kind(),
            AnyFixture::Prime(f, _) => f.kind(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyFixture::Rational(f) => to_json(f, FieldSpec::Rational),
            AnyFixture::Prime(f, p) => to_json(f, FieldSpec::Prime { p: *p }),
        }
    }
}

fn schema(field: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        field: field.into(),
        message: message.into(),
    }
}

pub fn load(path: &Path, opts: LoadOptions) -> Result<AnyFixture> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, opts)
}

pub fn parse(text: &str, opts: LoadOptions) -> Result<AnyFixture> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc.as_object().ok_or_else(|| schema("<root>", "expected a JSON object"))?;
    let field = match obj.get("field") {
        None => FieldSpec::Rational,
        Some(v) => serde_json::from_value::<FieldSpec>(v.clone())
            .map_err(|e| schema("field", format!("{e}")))?,
    };
    match field {
        FieldSpec::Rational => Ok(AnyFixture::Rational(parse_in(obj, field, opts)?)),
        FieldSpec::Prime { p } => {
            if !crate::scalar::is_prime(p) {
                return Err(Error::Coefficient {
                    field: "field.p".into(),
                    source: ScalarParseError::NotPrime(p),
                });
            }
            Ok(AnyFixture::Prime(parse_in(obj, field, opts)?, p))
        }
    }
}

pub fn save(fixture: &AnyFixture, path: &Path) -> Result<()> {
    write_json(&fixture.to_json(), path)
}

/// Sorted keys, one key per line, and one entry per line for entry lists.
pub fn canonical_text(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return format!("{value}\n");
    };
    let mut out = String::from("{\n");
    for (i, (key, v)) in obj.iter().enumerate() {
        out.push_str(&format!("  {}: ", Value::from(key.as_str())));
        match v.as_array() {
            Some(items) if !items.is_empty() && items.iter().all(Value::is_array) => {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    let sep = if k + 1 < items.len() { "," } else { "" };
                    out.push_str(&format!("    {item}{sep}\n"));
                }
                out.push_str("  ]");
            }
            _ => out.push_str(&v.to_string()),
        }
        out.push_str(if i + 1 < obj.len() { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

pub fn write_json(value: &Value, path: &Path) -> Result<()> {
    let text = canonical_text(value);
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

struct Reader<'a> {
    obj: &'a Map<String, Value>,
    field: FieldSpec,
    strict: bool,
}

impl<'a> Reader<'a> {
    fn get(&self, key: &str) -> Result<&'a Value> {
        self.obj.get(key).ok_or_else(|| schema(key, "missing required field"))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        self.get(key)?
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| schema(key, "expected a non-negative integer"))
    }

    fn string(&self, key: &str) -> Result<String> {
        self.get(key)?
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| schema(key, "expected a string"))
    }

    fn scalar<S: Scalar>(&self, v: &Value, at: &str) -> Result<S> {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            Value::Number(n) => {
                return Err(Error::Coefficient {
                    field: at.into(),
                    source: ScalarParseError::NotExact(n.to_string()),
                })
            }
            _ => return Err(schema(at, "expected a coefficient string")),
        };
        let x = S::parse_in(&text, self.field)
            .map_err(|source| Error::Coefficient {
                field: at.into(),
                source,
            })?
            .bind(self.field);
        if self.strict {
            let canonical = format_scalar(&x, self.field);
            if canonical != text {
                return Err(Error::Coefficient {
                    field: at.into(),
                    source: ScalarParseError::NonCanonical { found: text, canonical },
                });
            }
        }
        Ok(x)
    }

    fn dense<S: Scalar>(&self, key: &str, n: usize) -> Result<Vec<S>> {
        let list = self.get(key)?.as_array().ok_or_else(|| schema(key, "expected a list"))?;
        if list.len() != n {
            return Err(schema(key, format!("expected {n} coefficients, found {}", list.len())));
        }
        list.iter()
            .enumerate()
            .map(|(i, v)| self.scalar(v, &format!("{key}[{i}]")))
            .collect()
    }

    fn sparse<S: Scalar>(&self, key: &str, shape: &[usize]) -> Result<Tensor<S>> {
        let list = self.get(key)?.as_array().ok_or_else(|| schema(key, "expected a list of entries"))?;
        let mut t = Tensor::zeros(shape);
        for (e, entry) in list.iter().enumerate() {
            let at = format!("{key}[{e}]");
            let items = entry.as_array().ok_or_else(|| schema(&at, "expected an entry list"))?;
            if items.len() != shape.len() + 1 {
                return Err(schema(&at, format!("expected {} indices and a coefficient", shape.len())));
            }
            let mut idx = Vec::with_capacity(shape.len());
            for (k, bound) in shape.iter().enumerate() {
                let i = items[k]
                    .as_u64()
                    .ok_or_else(|| schema(&at, "indices must be non-negative integers"))? as usize;
                if i >= *bound {
                    return Err(Error::IndexOutOfRange {
                        field: at.clone(),
                        index: i,
                        bound: *bound,
                    });
                }
                idx.push(i);
            }
            let c: S = self.scalar(&items[shape.len()], &at)?;
            t.add_at(&idx, &c);
        }
        Ok(t)
    }

    fn names(&self, n: usize) -> Result<Vec<String>> {
        match self.obj.get("basis") {
            None => Ok((0..n).map(|i| format!("e{i}")).collect()),
            Some(v) => {
                let list = v.as_array().ok_or_else(|| schema("basis", "expected a list of names"))?;
                if list.len() != n {
                    return Err(schema("basis", format!("expected {n} names, found {}", list.len())));
                }
                list.iter()
                    .map(|s| s.as_str().map(str::to_string).ok_or_else(|| schema("basis", "names must be strings")))
                    .collect()
            }
        }
    }

    /// `[i, j, c]`: `c` is the `e_j` coefficient of `S(e_i)`.
    fn antipode<S: Scalar>(&self, n: usize) -> Result<Matrix<S>> {
        let t: Tensor<S> = self.sparse("antipode", &[n, n])?;
        Ok(Matrix::from_fn(n, n, |r, c| t.get(&[c, r]).clone()))
    }
}

fn parse_in<S: Scalar>(obj: &Map<String, Value>, field: FieldSpec, opts: LoadOptions) -> Result<Fixture<S>> {
    let r = Reader {
        obj,
        field,
        strict: opts.field_check,
    };
    let kind = r.string("kind")?;
    match kind.as_str() {
        "quasi_hopf" => {
            let n = r.usize("dim")?;
            let base = QuasiBialgebra::new(
                r.names(n)?,
                r.sparse("mult", &[n, n, n])?,
                Element(r.dense("unit", n)?),
                r.sparse("comult", &[n, n, n])?,
                Functional(r.dense("counit", n)?),
                r.sparse("phi", &[n, n, n])?,
                r.sparse("phi_inv", &[n, n, n])?,
            )?;
            let h = QuasiHopfAlgebra::new(base, r.antipode(n)?, Element(r.dense("alpha", n)?), Element(r.dense("beta", n)?))?;
            let h = if opts.normalize { normalize_alpha_beta(&h)? } else { h };
            Ok(Fixture::QuasiHopf(h))
        }
        "dual_quasi_hopf" => {
            let n = r.usize("dim")?;
            let a = DualQuasiHopfAlgebra::new(
                r.names(n)?,
                r.sparse("mult", &[n, n, n])?,
                Element(r.dense("unit", n)?),
                r.sparse("comult", &[n, n, n])?,
                Functional(r.dense("counit", n)?),
                r.sparse("phi", &[n, n, n])?,
                r.sparse("phi_inv", &[n, n, n])?,
                r.antipode(n)?,
                Functional(r.dense("alpha", n)?),
                Functional(r.dense("beta", n)?),
            )?;
            let a = if opts.normalize { normalize_dual(&a)? } else { a };
            Ok(Fixture::DualQuasiHopf(a))
        }
        "comodule" => {
            let m = r.usize("dim")?;
            let n = r.usize("algebra_dim")?;
            let coaction = r.sparse("coaction", &[m, m, n])?;
            Ok(Fixture::Comodule {
                over: r.string("over")?,
                comodule: RightComodule::new(coaction, n)?,
            })
        }
        "gauge" => {
            let n = r.usize("dim")?;
            Ok(Fixture::Gauge(GaugeTransformation {
                f: r.sparse("F", &[n, n])?,
                f_inv: r.sparse("F_inv", &[n, n])?,
            }))
        }
        "subspace" => {
            let m = r.usize("dim")?;
            let list = r.get("basis")?.as_array().ok_or_else(|| schema("basis", "expected a list of vectors"))?;
            let mut vectors = Vec::with_capacity(list.len());
            for (i, v) in list.iter().enumerate() {
                let at = format!("basis[{i}]");
                let coords = v.as_array().ok_or_else(|| schema(&at, "expected a coefficient list"))?;
                if coords.len() != m {
                    return Err(schema(&at, format!("expected {m} coefficients, found {}", coords.len())));
                }
                let vec = coords
                    .iter()
                    .enumerate()
                    .map(|(k, c)| r.scalar(c, &format!("{at}[{k}]")))
                    .collect::<Result<Vec<S>>>()?;
                vectors.push(vec);
            }
            Ok(Fixture::Subspace(Subspace::span(m, &vectors)?))
        }
        other => Err(Error::UnknownKind(other.to_string())),
    }
}

/// `α(1) = β(1) = 1` when `α(1)β(1) = 1`.
fn normalize_dual<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Result<DualQuasiHopfAlgebra<S>> {
    let ea = a.alpha().eval(a.unit());
    let eb = a.beta().eval(a.unit());
    let prod = ea.mul_ref(&eb);
    if !prod.is_one() {
        return Err(Error::Normalization(prod.to_string()));
    }
    a.with_alpha_beta(a.alpha().scale(&eb), a.beta().scale(&ea))
}

fn dense_json<S: Scalar>(v: &[S], field: FieldSpec) -> Value {
    Value::Array(v.iter().map(|c| Value::String(format_scalar(c, field))).collect())
}

fn sparse_json<S: Scalar>(t: &Tensor<S>, field: FieldSpec) -> Value {
    Value::Array(
        t.terms()
            .into_iter()
            .map(|(idx, c)| {
                let mut entry: Vec<Value> = idx.into_iter().map(Value::from).collect();
                entry.push(Value::String(format_scalar(&c, field)));
                Value::Array(entry)
            })
            .collect(),
    )
}

fn antipode_json<S: Scalar>(m: &Matrix<S>, field: FieldSpec) -> Value {
    let n = m.rows();
    let t = Tensor::from_coords(&[n, n], (0..n * n).map(|k| m.get(k % n, k / n).clone()).collect()).expect("square");
    sparse_json(&t, field)
}

pub fn to_json<S: Scalar>(fixture: &Fixture<S>, field: FieldSpec) -> Value {
    let mut doc = match fixture {
        Fixture::QuasiHopf(h) => json!({
            "dim": h.dim(),
            "basis": h.names(),
            "mult": sparse_json(h.mult_table().tensor(), field),
            "unit": dense_json(h.unit().coords(), field),
            "comult": sparse_json(h.comult_table().tensor(), field),
            "counit": dense_json(h.counit_functional().coords(), field),
            "phi": sparse_json(h.phi(), field),
            "phi_inv": sparse_json(h.phi_inv(), field),
            "antipode": antipode_json(h.antipode_matrix(), field),
            "alpha": dense_json(h.alpha().coords(), field),
            "beta": dense_json(h.beta().coords(), field),
        }),
        Fixture::DualQuasiHopf(a) => json!({
            "dim": a.dim(),
            "basis": a.names(),
            "mult": sparse_json(a.mult_tensor(), field),
            "unit": dense_json(a.unit().coords(), field),
            "comult": sparse_json(a.comult_tensor(), field),
            "counit": dense_json(a.counit_functional().coords(), field),
            "phi": sparse_json(a.phi(), field),
            "phi_inv": sparse_json(a.phi_inv(), field),
            "antipode": antipode_json(a.antipode_matrix(), field),
            "alpha": dense_json(a.alpha().coords(), field),
            "beta": dense_json(a.beta().coords(), field),
        }),
        Fixture::Comodule { over, comodule } => json!({
            "over": over,
            "dim": comodule.dim(),
            "algebra_dim": comodule.coaction().shape()[2],
            "coaction": sparse_json(comodule.coaction(), field),
        }),
        Fixture::Gauge(g) => json!({
            "dim": g.f.shape()[0],
            "F": sparse_json(&g.f, field),
            "F_inv": sparse_json(&g.f_inv, field),
        }),
        Fixture::Subspace(s) => json!({
            "dim": s.ambient(),
            "basis": s.basis().iter().map(|v| dense_json(v, field)).collect::<Vec<_>>(),
        }),
    };
    let obj = doc.as_object_mut().expect("object");
    obj.insert("kind".into(), Value::from(fixture.kind()));
    obj.insert("field".into(), serde_json::to_value(field).expect("field spec"));
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dual::dualize;

    #[test]
    fn corpus_round_trips_through_json() {
        for (name, h) in corpus::all() {
            let doc = to_json(&Fixture::QuasiHopf(h.clone()), FieldSpec::Rational);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            let back = parse(&text, LoadOptions::default()).unwrap();
            assert_eq!(back, AnyFixture::Rational(Fixture::QuasiHopf(h.clone())), "{name}");
            assert_eq!(serde_json::to_string_pretty(&back.to_json()).unwrap(), text, "{name}");
            let canonical = canonical_text(&doc);
            assert_eq!(canonical_text(&parse(&canonical, LoadOptions::default()).unwrap().to_json()), canonical);
            let a = dualize(&h);
            let doc = to_json(&Fixture::DualQuasiHopf(a.clone()), FieldSpec::Rational);
            let back = parse(&doc.to_string(), LoadOptions::default()).unwrap();
            assert_eq!(back, AnyFixture::Rational(Fixture::DualQuasiHopf(a)), "{name} dual");
        }
    }

    fn h2_plus_text() -> String {
        to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational).to_string()
    }

    #[test]
    fn float_literal_rejected_with_field() {
        let text = h2_plus_text().replacen("\"alpha\":[\"0\",\"1\"]", "\"alpha\":[\"0.5\",\"1\"]", 1);
        assert_ne!(text, h2_plus_text());
        let err = parse(&text, LoadOptions::default()).unwrap_err();
        assert!(matches!(&err, Error::Coefficient { field, source: ScalarParseError::NotExact(_) } if field == "alpha[0]"), "{err}");
    }

    #[test]
    fn schema_errors_name_the_field() {
        let mut doc = to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational);
        doc.as_object_mut().unwrap().remove("comult");
        let err = parse(&doc.to_string(), LoadOptions::default()).unwrap_err();
        assert!(matches!(&err, Error::Schema { field, .. } if field == "comult"), "{err}");

        let mut doc = to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational);
        doc["mult"][0][2] = json!(7);
        let err = parse(&doc.to_string(), LoadOptions::default()).unwrap_err();
        assert!(matches!(&err, Error::IndexOutOfRange { field, index: 7, bound: 2 } if field == "mult[0]"), "{err}");

        let mut doc = to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational);
        doc["kind"] = json!("hopf_thing");
        assert!(matches!(parse(&doc.to_string(), LoadOptions::default()), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn field_check_rejects_non_canonical() {
        let mut doc = to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational);
        doc["beta"][0] = json!("2/2");
        let lenient = parse(&doc.to_string(), LoadOptions::default()).unwrap();
        assert_eq!(lenient, AnyFixture::Rational(Fixture::QuasiHopf(corpus::h2_plus())));
        let strict = LoadOptions {
            field_check: true,
            ..LoadOptions::default()
        };
        let err = parse(&doc.to_string(), strict).unwrap_err();
        assert!(matches!(err, Error::Coefficient { source: ScalarParseError::NonCanonical { .. }, .. }));
    }

    #[test]
    fn prime_field_reads_rational_literals() {
        let mut doc = to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational);
        doc["field"] = json!({"type": "prime", "p": 5});
        let loaded = parse(&doc.to_string(), LoadOptions::default()).unwrap();
        let AnyFixture::Prime(Fixture::QuasiHopf(h), 5) = &loaded else {
            panic!("expected an F_5 algebra");
        };
        assert!(crate::algebra::verify_axioms(h).unwrap().passed());
        // canonical output uses residues, and reloads to itself strictly
        let text = loaded.to_json().to_string();
        assert!(text.contains("mod 5"));
        let strict = LoadOptions {
            field_check: true,
            ..LoadOptions::default()
        };
        assert_eq!(parse(&text, strict).unwrap(), loaded);
        doc["field"] = json!({"type": "prime", "p": 2});
        assert!(parse(&doc.to_string(), LoadOptions::default()).is_err());
    }

    #[test]
    fn normalization_applies_unless_disabled() {
        let h = corpus::kz2_hopf();
        let two = Rational::from_i64(2);
        let half = two.try_inv().unwrap();
        let skewed = h.with_alpha_beta(h.one().scale(&two), h.one().scale(&half)).unwrap();
        let text = to_json(&Fixture::QuasiHopf(skewed.clone()), FieldSpec::Rational).to_string();
        let AnyFixture::Rational(Fixture::QuasiHopf(n)) = parse(&text, LoadOptions::default()).unwrap() else { panic!() };
        assert_eq!(n.alpha(), &h.one());
        let raw = LoadOptions {
            normalize: false,
            ..LoadOptions::default()
        };
        let AnyFixture::Rational(Fixture::QuasiHopf(r)) = parse(&text, raw).unwrap() else { panic!() };
        assert_eq!(r, skewed);
    }
}
