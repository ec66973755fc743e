//! `TensorDocument`: the interchange format.
//!
//! A JSON object laid out one coefficient per line. Coefficients are written
//! with 17 significant digits, which pins down every `f64` exactly, so
//! `parse(emit(doc))` reproduces the bits of every coefficient (signed zeros
//! included). Non-finite values cannot be emitted; on input they may be
//! spelled as strings (`"NaN"`, `"inf"`) and are rejected with
//! `ParseError::NonFinite`, distinct from syntax errors.

use std::fmt::{self, Write as _};

use affine_moduli_core::{Christoffel, Error as CoreError};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "affine-moduli/1";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        self.family.is_none() && self.params.is_none() && self.notes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorDocument {
    pub m: usize,
    pub coeffs: Vec<f64>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    /// Not valid JSON; carries serde_json's line/column.
    Syntax { line: usize, column: usize, message: String },
    /// Valid JSON with a missing or ill-typed field.
    Field { field: String, message: String },
    /// Well-formed, but a coefficient is NaN or infinite.
    NonFinite { index: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            ParseError::Field { field, message } => write!(f, "field `{field}`: {message}"),
            ParseError::NonFinite { index } => write!(f, "field `coeffs[{index}]`: value is not finite"),
        }
    }
}

impl std::error::Error for ParseError {}

fn field(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field { field: field.into(), message: message.into() }
}

impl TensorDocument {
    pub fn from_christoffel(g: &Christoffel) -> Self {
        TensorDocument { m: g.m(), coeffs: g.coeffs().to_vec(), metadata: Metadata::default() }
    }

    pub fn with_metadata(mut self, metadata: Metadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn christoffel(&self) -> Result<Christoffel, CoreError> {
        Christoffel::new(self.m, self.coeffs.clone())
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"schema_version\": \"{SCHEMA}\",");
        let _ = writeln!(out, "  \"m\": {},", self.m);
        out.push_str("  \"coeffs\": [\n");
        for (n, x) in self.coeffs.iter().enumerate() {
            assert!(x.is_finite(), "cannot emit a non-finite coefficient");
            let sep = if n + 1 < self.coeffs.len() { "," } else { "" };
            let _ = writeln!(out, "    {x:.16e}{sep}");
        }
        if self.metadata.is_empty() {
            out.push_str("  ]\n");
        } else {
            out.push_str("  ],\n");
            let meta = serde_json::to_string(&self.metadata).expect("metadata is plain data");
            let _ = writeln!(out, "  \"metadata\": {meta}");
        }
        out.push_str("}\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let v: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let obj = v.as_object().ok_or_else(|| field("<root>", "expected an object"))?;
        match obj.get("schema_version") {
            Some(Value::String(s)) if s == SCHEMA => {}
            Some(Value::String(s)) => {
                return Err(field("schema_version", format!("unsupported \"{s}\", expected \"{SCHEMA}\"")))
            }
            Some(_) => return Err(field("schema_version", "expected a string")),
            None => return Err(field("schema_version", "missing")),
        }
        let m = obj
            .get("m")
            .ok_or_else(|| field("m", "missing"))?
            .as_u64()
            .filter(|&m| (1..=64).contains(&m))
            .ok_or_else(|| field("m", "expected an integer in 1..=64"))? as usize;
        let raw = obj
            .get("coeffs")
            .ok_or_else(|| field("coeffs", "missing"))?
            .as_array()
            .ok_or_else(|| field("coeffs", "expected an array"))?;
        if raw.len() != m * m * m {
            return Err(field("coeffs", format!("expected m³ = {} values, found {}", m * m * m, raw.len())));
        }
        let mut coeffs = Vec::with_capacity(raw.len());
        for (n, x) in raw.iter().enumerate() {
            let val = match x {
                Value::Number(num) => {
                    num.as_f64().ok_or_else(|| field(format!("coeffs[{n}]"), "not representable as f64"))?
                }
                Value::String(s) => s
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| field(format!("coeffs[{n}]"), format!("not a number: \"{s}\"")))?,
                _ => return Err(field(format!("coeffs[{n}]"), "expected a number")),
            };
            coeffs.push(val);
        }
        if let Some(index) = coeffs.iter().position(|x| !x.is_finite()) {
            return Err(ParseError::NonFinite { index });
        }
        let metadata = match obj.get("metadata") {
            None | Some(Value::Null) => Metadata::default(),
            Some(v) => serde_json::from_value(v.clone()).map_err(|e| field("metadata", e.to_string()))?,
        };
        Ok(TensorDocument { m, coeffs, metadata })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(coeffs: Vec<f64>) -> TensorDocument {
        TensorDocument { m: 2, coeffs, metadata: Metadata::default() }
    }

    fn bits(d: &TensorDocument) -> Vec<u64> {
        d.coeffs.iter().map(|x| x.to_bits()).collect()
    }

    #[test]
    fn awkward_values_roundtrip_bitwise() {
        let d = doc(vec![0.1, -0.0, f64::MIN_POSITIVE, 5e-324, f64::MAX, 1.0 / 3.0, -2.0_f64.sqrt(), 1e22]);
        let back = TensorDocument::parse(&d.emit()).unwrap();
        assert_eq!(bits(&back), bits(&d));
    }

    #[test]
    fn metadata_roundtrips() {
        let meta = Metadata { family: Some("x".into()), params: Some(vec![0.1, -3.0]), notes: vec!["n".into()] };
        let d = doc(vec![0.0; 8]).with_metadata(meta);
        assert_eq!(TensorDocument::parse(&d.emit()).unwrap(), d);
    }

    #[test]
    fn one_coefficient_per_line() {
        let text = doc((0..8).map(f64::from).collect()).emit();
        assert_eq!(text.lines().count(), 4 + 8 + 2);
    }

    #[test]
    fn diagnostics() {
        let good = doc(vec![0.0; 8]).emit();
        let e = TensorDocument::parse(&good.replace("\"m\": 2,", "\"m\": 2")).unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 4, .. }), "{e:?}");
        let e = TensorDocument::parse(&good.replace("\"m\": 2", "\"m\": 3")).unwrap_err();
        assert!(matches!(&e, ParseError::Field { field, .. } if field == "coeffs"));
        let e = TensorDocument::parse(&good.replace("affine-moduli/1", "v0")).unwrap_err();
        assert!(matches!(&e, ParseError::Field { field, .. } if field == "schema_version"));
        let bad = good.replacen("0.0000000000000000e0", "\"NaN\"", 2);
        assert_eq!(TensorDocument::parse(&bad).unwrap_err(), ParseError::NonFinite { index: 0 });
    }
}
