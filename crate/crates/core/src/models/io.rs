//! JSON instance files.
//!
//! ```json
//! {"n": 2, "labels": ["a", "b"], "cost": [["2", "0"], ["1", "3"]], "mode": "exact"}
//! ```
//!
//! Costs are numbers or rational strings (`"-1/2"`); `"inf"` or `null`
//! marks a missing edge. An optional `claims` object (`alpha0`, `h`) records
//! asserted results for `wkam verify` to check.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Result, WkamError};
use crate::tropical::{CostInstance, Ext, Matrix, NumericMode, Rational, Scalar, DEFAULT_TOLERANCE};

/// An instance in either numeric backend.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyInstance {
    Exact(CostInstance<Rational>),
    Float(CostInstance<f64>),
}

impl AnyInstance {
    pub fn n(&self) -> usize {
        match self {
            AnyInstance::Exact(i) => i.n(),
            AnyInstance::Float(i) => i.n(),
        }
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            AnyInstance::Exact(i) => i.mode(),
            AnyInstance::Float(i) => i.mode(),
        }
    }

    /// Converts to the requested backend; `tolerance` applies to float mode.
    pub fn into_mode(self, mode: Option<&str>, tolerance: Option<f64>) -> Result<AnyInstance> {
        let out = match (mode, self) {
            (None, a) => a,
            (Some("exact"), AnyInstance::Float(i)) => AnyInstance::Exact(i.convert()?),
            (Some("float"), AnyInstance::Exact(i)) => AnyInstance::Float(i.convert()?),
            (Some("exact" | "float"), a) => a,
            (Some(other), _) => return Err(WkamError::InvalidArgument(format!("unknown mode {other:?}"))),
        };
        match (out, tolerance) {
            (AnyInstance::Float(i), Some(t)) => Ok(AnyInstance::Float(i.with_tolerance(t)?)),
            (o, _) => Ok(o),
        }
    }
}

/// Asserted results stored alongside an instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Claims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<Value>>>,
}

impl Claims {
    pub fn is_empty(&self) -> bool {
        self.alpha0.is_none() && self.h.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub instance: AnyInstance,
    pub claims: Claims,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    cost: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<Value>>>,
    #[serde(default = "default_mode")]
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    claims: Option<Claims>,
}

fn default_mode() -> String {
    "exact".into()
}

/// Parses one JSON cell as a finite scalar.
pub fn parse_value<T: Scalar>(v: &Value) -> Result<T> {
    match v {
        Value::Number(num) => T::parse_value(&num.to_string()),
        Value::String(s) => T::parse_value(s),
        other => Err(WkamError::Parse(format!("expected a number, got {other}"))),
    }
}

fn parse_ext<T: Scalar>(v: &Value) -> Result<Ext<T>> {
    match v {
        Value::Null => Ok(Ext::Inf),
        Value::String(s) if matches!(s.trim(), "inf" | "+inf" | "Infinity" | "+Infinity") => Ok(Ext::Inf),
        other => parse_value(other).map(Ext::Fin),
    }
}

pub fn parse_matrix<T: Scalar>(rows: &[Vec<Value>]) -> Result<Matrix<T>> {
    let parsed = rows.iter().map(|r| r.iter().map(parse_value).collect::<Result<Vec<T>>>()).collect::<Result<_>>()?;
    Matrix::from_rows(parsed)
}

fn build<T: Scalar>(raw: &RawInstance) -> Result<CostInstance<T>> {
    if raw.cost.len() != raw.n {
        return Err(WkamError::Parse(format!("n = {} but cost has {} rows", raw.n, raw.cost.len())));
    }
    let rows = raw
        .cost
        .iter()
        .map(|r| r.iter().map(parse_ext).collect::<Result<Vec<Ext<T>>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut inst = CostInstance::new(Matrix::from_rows(rows)?)?;
    if let Some(t) = raw.tolerance {
        inst = inst.with_tolerance(t)?;
    }
    if let Some(labels) = &raw.labels {
        inst = inst.with_labels(labels.clone())?;
    }
    if let Some(m) = &raw.metric {
        inst = inst.with_metric(parse_matrix(m)?)?;
    }
    Ok(inst)
}

pub fn from_json_str(text: &str) -> Result<Document> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| WkamError::Parse(e.to_string()))?;
    let instance = match raw.mode.as_str() {
        "exact" => AnyInstance::Exact(build(&raw)?),
        "float" => AnyInstance::Float(build(&raw)?),
        other => return Err(WkamError::Parse(format!("unknown mode {other:?}"))),
    };
    Ok(Document { instance, claims: raw.claims.unwrap_or_default() })
}

pub fn load_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path)
        .map_err(|e| WkamError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    from_json_str(&text)
}

pub fn load(path: &Path) -> Result<AnyInstance> {
    Ok(load_document(path)?.instance)
}

fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<Value>> {
    m.rows().map(|r| r.iter().map(Scalar::to_json).collect()).collect()
}

fn raw_of<T: Scalar>(inst: &CostInstance<T>, claims: &Claims) -> RawInstance {
    RawInstance {
        n: inst.n(),
        labels: Some(inst.labels().to_vec()),
        cost: inst.cost().rows().map(|r| r.iter().map(Ext::to_json).collect()).collect(),
        metric: inst.metric().map(matrix_json),
        mode: if T::EXACT { "exact" } else { "float" }.into(),
        tolerance: (!T::EXACT && inst.tolerance() != DEFAULT_TOLERANCE).then(|| inst.tolerance()),
        claims: (!claims.is_empty()).then(|| claims.clone()),
    }
}

pub fn to_json_string(doc: &Document) -> Result<String> {
    let raw = match &doc.instance {
        AnyInstance::Exact(i) => raw_of(i, &doc.claims),
        AnyInstance::Float(i) => raw_of(i, &doc.claims),
    };
    let mut s = serde_json::to_string_pretty(&raw)?;
    s.push('\n');
    Ok(s)
}

pub fn save(inst: &AnyInstance, path: &Path) -> Result<()> {
    save_document(&Document { instance: inst.clone(), claims: Claims::default() }, path)
}

pub fn save_document(doc: &Document, path: &Path) -> Result<()> {
    fs::write(path, to_json_string(doc)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::rat;

    #[test]
    fn parses_rational_strings_and_infinity() {
        let doc = from_json_str(r#"{"n": 2, "cost": [["-1/2", 0], [1.5, "inf"]], "mode": "exact"}"#).unwrap();
        let AnyInstance::Exact(i) = doc.instance else { panic!() };
        assert_eq!(i.c(0, 0), &Ext::Fin(rat(-1, 2)));
        assert_eq!(i.c(1, 0), &Ext::Fin(rat(3, 2)));
        assert_eq!(i.c(1, 1), &Ext::Inf);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(from_json_str(r#"{"n": 2, "cost": [[1, 2], [3]]}"#).is_err());
        assert!(from_json_str(r#"{"n": 3, "cost": [[1, 2], [3, 4]]}"#).is_err());
        assert!(from_json_str(r#"{"n": 1, "cost": [["NaN"]], "mode": "float"}"#).is_err());
        assert!(from_json_str(r#"{"n": 1, "cost": [[1]], "mode": "fuzzy"}"#).is_err());
        assert!(from_json_str("not json").is_err());
    }

    #[test]
    fn exact_round_trip_is_byte_stable() {
        let text = r#"{"n": 2, "labels": ["a", "b"], "cost": [["2", "-1/2"], ["1", "3"]], "mode": "exact",
            "claims": {"alpha0": "-1/4"}}"#;
        let doc = from_json_str(text).unwrap();
        let once = to_json_string(&doc).unwrap();
        let again = to_json_string(&from_json_str(&once).unwrap()).unwrap();
        assert_eq!(once, again);
        assert_eq!(from_json_str(&once).unwrap(), doc);
        assert!(once.contains("\"-1/2\""));
    }

    #[test]
    fn mode_override() {
        let doc = from_json_str(r#"{"n": 1, "cost": [["1/4"]]}"#).unwrap();
        let f = doc.instance.into_mode(Some("float"), Some(1e-6)).unwrap();
        let AnyInstance::Float(i) = &f else { panic!() };
        assert_eq!(i.c(0, 0), &Ext::Fin(0.25));
        assert_eq!(i.tolerance(), 1e-6);
        assert!(f.into_mode(Some("bogus"), None).is_err());
    }
}
