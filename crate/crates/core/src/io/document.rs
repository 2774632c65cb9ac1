//! The JSON instance schema.
//!
//! ```json
//! {
//!   "label": "optional name",
//!   "dimension": 4,
//!   "labels": ["e1", "e2", "e3", "e4"],
//!   "brackets": [{"i": 1, "j": 2, "terms": {"3": "-1/2"}}],
//!   "I": [["0", "-1", "0", "0"], ...],
//!   "J": [...],
//!   "gram": [...],
//!   "coframe": [{"re": [...], "im": [...]}]
//! }
//! ```
//!
//! or, instead of the algebra data, `"family": {"id": "gt", "params": {"t": "1/3"}}`.
//! Basis indices are 1-based. Matrices are row-major; column `j` is the image
//! of `e_j`. Coframe rows give `φ^a` in the dual basis `e^1, …, e^n`.
//! Rationals are integers or `"p/q"` strings; floating-point literals are
//! rejected.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::families::{build_family, FamilyId, FamilySpec};
use crate::hypercomplex::HypercomplexTriple;
use crate::instance::{Instance, Source};
use crate::lie::{Bracket, LieAlgebra};
use crate::linalg::{fmt_rational, parse_rational, Matrix, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitAlgebra {
    pub dimension: usize,
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<Bracket>,
    pub i: Vec<Vec<Rational>>,
    pub j: Vec<Vec<Rational>>,
    pub gram: Option<Vec<Vec<Rational>>>,
    pub coframe: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Explicit(ExplicitAlgebra),
    Family(FamilySpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub label: Option<String>,
    pub body: Body,
}

const EXPLICIT_KEYS: [&str; 7] = ["dimension", "labels", "brackets", "I", "J", "gram", "coframe"];

pub fn parse_instance(text: &str) -> Result<InstanceDocument> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?;
    let obj = object(&v, "$")?;
    for k in obj.keys() {
        if k != "label" && k != "family" && !EXPLICIT_KEYS.contains(&k.as_str()) {
            return Err(schema("$", format!("unknown key {k:?}")));
        }
    }
    let label = match obj.get("label") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(schema("$.label", "expected a string")),
    };
    let explicit = EXPLICIT_KEYS.iter().any(|k| obj.contains_key(*k));
    let body = match (obj.get("family"), explicit) {
        (Some(_), true) => return Err(schema("$", "give either algebra data or a family reference, not both")),
        (Some(f), false) => Body::Family(parse_family(f)?),
        (None, true) => Body::Explicit(parse_explicit(obj)?),
        (None, false) => return Err(schema("$", "missing algebra data or family reference")),
    };
    Ok(InstanceDocument { label, body })
}

impl InstanceDocument {
    /// Canonical JSON: fixed key order, every rational as a string.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        if let Some(l) = &self.label {
            m.insert("label".into(), l.clone().into());
        }
        match &self.body {
            Body::Family(spec) => {
                let params: Map<String, Value> = spec.params.iter().map(|(k, v)| (k.clone(), rat_json(v))).collect();
                m.insert("family".into(), serde_json::json!({ "id": spec.id.name(), "params": params }));
            }
            Body::Explicit(e) => {
                m.insert("dimension".into(), e.dimension.into());
                if let Some(l) = &e.labels {
                    m.insert("labels".into(), l.clone().into());
                }
                let brackets: Vec<Value> = e
                    .brackets
                    .iter()
                    .map(|b| {
                        let terms: Map<String, Value> = b.terms.iter().map(|(k, c)| ((k + 1).to_string(), rat_json(c))).collect();
                        serde_json::json!({ "i": b.i + 1, "j": b.j + 1, "terms": terms })
                    })
                    .collect();
                m.insert("brackets".into(), brackets.into());
                m.insert("I".into(), matrix_json(&e.i));
                m.insert("J".into(), matrix_json(&e.j));
                if let Some(g) = &e.gram {
                    m.insert("gram".into(), matrix_json(g));
                }
                if let Some(cf) = &e.coframe {
                    let rows: Vec<Value> = cf
                        .iter()
                        .map(|r| {
                            let re: Vec<Value> = r.iter().map(|s| rat_json(&s.re)).collect();
                            let im: Vec<Value> = r.iter().map(|s| rat_json(&s.im)).collect();
                            serde_json::json!({ "re": re, "im": im })
                        })
                        .collect();
                    m.insert("coframe".into(), rows.into());
                }
            }
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    /// Builds the instance. Semantic checks (Jacobi, `I² = −1`, …) happen
    /// here, not in the parser.
    pub fn build(&self) -> Result<Instance> {
        match &self.body {
            Body::Family(spec) => {
                let mut inst = build_family(spec)?;
                if let Some(l) = &self.label {
                    inst.label = l.clone();
                }
                Ok(inst)
            }
            Body::Explicit(e) => {
                let g = LieAlgebra::new(e.dimension, e.labels.clone(), &e.brackets)?;
                if let Some((i, j, k)) = g.validate_jacobi().violation {
                    return Err(Error::JacobiViolation(i, j, k));
                }
                let triple = HypercomplexTriple::check(e.dimension, Matrix::from_rational_rows(&e.i), Matrix::from_rational_rows(&e.j))?;
                let gram = e.gram.as_ref().map(|g| Matrix::from_rational_rows(g));
                let label = self.label.clone().unwrap_or_else(|| "explicit".into());
                Instance::new(label, g, triple, e.coframe.clone(), gram, Source::Explicit)
            }
        }
    }
}

fn schema(path: &str, msg: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), msg: msg.into() }
}

fn rat_json(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

fn matrix_json(m: &[Vec<Rational>]) -> Value {
    m.iter().map(|r| Value::Array(r.iter().map(rat_json).collect())).collect::<Vec<_>>().into()
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn rational(v: &Value, path: &str) -> Result<Rational> {
    let bad = |lit: String| Error::NonRationalLiteral { path: path.into(), literal: lit };
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None if n.is_f64() => Err(bad(n.to_string())),
            None => Err(schema(path, format!("integer {n} out of range; write it as a string"))),
        },
        Value::String(s) => parse_rational(s).ok_or_else(|| {
            if s.contains(['.', 'e', 'E']) {
                bad(s.clone())
            } else {
                schema(path, format!("{s:?} is not a rational p/q"))
            }
        }),
        _ => Err(schema(path, "expected a rational (integer or \"p/q\" string)")),
    }
}

/// A 1-based index into `0..dim`, returned 0-based.
fn index(v: &Value, dim: usize, path: &str) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| schema(path, "expected a positive integer index"))? as usize;
    if i == 0 || i > dim {
        return Err(schema(path, format!("index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

fn index_str(s: &str, dim: usize, path: &str) -> Result<usize> {
    let i: usize = s.parse().map_err(|_| schema(path, format!("key {s:?} is not a basis index")))?;
    if i == 0 || i > dim {
        return Err(schema(path, format!("index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

fn matrix(v: &Value, dim: usize, path: &str) -> Result<Vec<Vec<Rational>>> {
    let rows = array(v, path)?;
    if rows.len() != dim {
        return Err(schema(path, format!("expected {dim} rows, got {}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let p = format!("{path}[{r}]");
            let row = array(row, &p)?;
            if row.len() != dim {
                return Err(schema(&p, format!("expected {dim} entries, got {}", row.len())));
            }
            row.iter().enumerate().map(|(c, x)| rational(x, &format!("{p}[{c}]"))).collect()
        })
        .collect()
}

fn parse_family(v: &Value) -> Result<FamilySpec> {
    let obj = object(v, "$.family")?;
    for k in obj.keys() {
        if k != "id" && k != "params" {
            return Err(schema("$.family", format!("unknown key {k:?}")));
        }
    }
    let id = obj.get("id").and_then(Value::as_str).ok_or_else(|| schema("$.family.id", "expected a family name"))?;
    let id: FamilyId = id.parse().map_err(|e: Error| schema("$.family.id", e.to_string()))?;
    let mut params = Vec::new();
    if let Some(p) = obj.get("params") {
        for (k, x) in object(p, "$.family.params")? {
            let path = format!("$.family.params.{k}");
            if !id.parameters().contains(&k.as_str()) {
                return Err(schema(&path, format!("family {id} has no parameter {k:?}")));
            }
            params.push((k.clone(), rational(x, &path)?));
        }
    }
    let params: Vec<(&str, Rational)> = params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Ok(FamilySpec::new(id, &params))
}

fn parse_explicit(obj: &Map<String, Value>) -> Result<ExplicitAlgebra> {
    let dimension = obj
        .get("dimension")
        .and_then(Value::as_u64)
        .filter(|&d| d > 0)
        .ok_or_else(|| schema("$.dimension", "expected a positive integer"))? as usize;
    let labels = match obj.get("labels") {
        None => None,
        Some(v) => {
            let a = array(v, "$.labels")?;
            if a.len() != dimension {
                return Err(schema("$.labels", format!("expected {dimension} labels, got {}", a.len())));
            }
            Some(
                a.iter()
                    .enumerate()
                    .map(|(n, x)| x.as_str().map(str::to_string).ok_or_else(|| schema(&format!("$.labels[{n}]"), "expected a string")))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let mut brackets = Vec::new();
    if let Some(v) = obj.get("brackets") {
        for (n, b) in array(v, "$.brackets")?.iter().enumerate() {
            let path = format!("$.brackets[{n}]");
            let bo = object(b, &path)?;
            for k in bo.keys() {
                if !["i", "j", "terms"].contains(&k.as_str()) {
                    return Err(schema(&path, format!("unknown key {k:?}")));
                }
            }
            let i = index(bo.get("i").unwrap_or(&Value::Null), dimension, &format!("{path}.i"))?;
            let j = index(bo.get("j").unwrap_or(&Value::Null), dimension, &format!("{path}.j"))?;
            let tp = format!("{path}.terms");
            let terms = object(bo.get("terms").unwrap_or(&Value::Null), &tp)?
                .iter()
                .map(|(k, x)| {
                    let p = format!("{tp}.{k}");
                    Ok((index_str(k, dimension, &p)?, rational(x, &p)?))
                })
                .collect::<Result<Vec<_>>>()?;
            brackets.push(Bracket { i, j, terms });
        }
    }
    let need = |k: &str| obj.get(k).ok_or_else(|| schema(&format!("$.{k}"), "missing"));
    let i = matrix(need("I")?, dimension, "$.I")?;
    let j = matrix(need("J")?, dimension, "$.J")?;
    let gram = obj.get("gram").map(|g| matrix(g, dimension, "$.gram")).transpose()?;
    let coframe = match obj.get("coframe") {
        None => None,
        Some(v) => {
            let rows = array(v, "$.coframe")?;
            let mut out = Vec::new();
            for (n, r) in rows.iter().enumerate() {
                let path = format!("$.coframe[{n}]");
                let ro = object(r, &path)?;
                let part = |k: &str| -> Result<Vec<Rational>> {
                    let p = format!("{path}.{k}");
                    let a = match ro.get(k) {
                        Some(a) => array(a, &p)?,
                        None => return Ok(vec![Rational::from_integer(0.into()); dimension]),
                    };
                    if a.len() != dimension {
                        return Err(schema(&p, format!("expected {dimension} entries, got {}", a.len())));
                    }
                    a.iter().enumerate().map(|(c, x)| rational(x, &format!("{p}[{c}]"))).collect()
                };
                let (re, im) = (part("re")?, part("im")?);
                out.push(re.into_iter().zip(im).map(|(a, b)| Scalar::new(a, b)).collect());
            }
            Some(out)
        }
    };
    Ok(ExplicitAlgebra { dimension, labels, brackets, i, j, gram, coframe })
}
