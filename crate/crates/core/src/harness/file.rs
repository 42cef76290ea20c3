//! Algebra presentation files.
//!
//! ```toml
//! name = "dual"
//! unit = "1"
//! window = 4            # optional
//! basis = [{ label = "1", weight = 0 }, { label = "e", weight = 0 }]
//! mul = [{ left = "e", right = "e", result = [] }]
//! ```
//!
//! `result` is a list of `{ coeff = "p/q", label }`; products left out are zero and products
//! with the unit are implied. The same schema is accepted as JSON.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Deserialize;

use crate::algebra::{AlgebraBuilder, GradedAlgebra, Violation};
use crate::qlinalg::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
  Toml,
  Json,
}

/// Where in the input something went wrong: a line/column for syntax errors, a field path
/// such as `mul[2].result[0].label` for validation errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
  Text { line: usize, column: usize },
  Field(String),
  Document,
}

impl fmt::Display for Location {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Location::Text { line, column } => write!(f, "line {line}, column {column}"),
      Location::Field(path) => f.write_str(path),
      Location::Document => f.write_str("document"),
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
  pub location: Location,
  pub message:  String,
}

impl fmt::Display for Issue {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{}: {}", self.location, self.message) }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
  #[error("parse error at {}", .0)]
  Parse(Issue),
  #[error("{} validation error(s):\n{}", .0.len(), .0.iter().map(|i| format!("  {i}")).join("\n"))]
  Validation(Vec<Issue>),
  #[error("cannot read {path}: {message}")]
  Io { path: String, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
  name:   Option<String>,
  unit:   String,
  window: Option<u32>,
  basis:  Vec<RawBasis>,
  #[serde(default)]
  mul:    Vec<RawProduct>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
  label:  String,
  #[serde(default)]
  weight: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
  left:   String,
  right:  String,
  result: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
  coeff: RawCoeff,
  label: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
  Int(i64),
  Text(String),
}

fn line_col(text: &str, offset: usize) -> Location {
  let before = &text[..offset.min(text.len())];
  let line = before.matches('\n').count() + 1;
  let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
  Location::Text { line, column }
}

fn syntax(text: &str, format: Format) -> Result<RawAlgebra, FileError> {
  match format {
    Format::Toml => toml::from_str(text).map_err(|e| {
      let location = e.span().map_or(Location::Document, |s| line_col(text, s.start));
      FileError::Parse(Issue { location, message: e.message().to_string() })
    }),
    Format::Json => serde_json::from_str(text).map_err(|e| {
      let location = Location::Text { line: e.line(), column: e.column() };
      let message = e.to_string();
      let message = message.split(" at line ").next().unwrap_or(&message).to_string();
      FileError::Parse(Issue { location, message })
    }),
  }
}

/// Parses and validates a presentation; `default_name` is used when the file has no `name`.
pub fn parse_algebra(text: &str, format: Format, default_name: &str) -> Result<GradedAlgebra, FileError> {
  let raw = syntax(text, format)?;
  let mut issues = Vec::new();
  let issue = |issues: &mut Vec<Issue>, path: String, message: String| issues.push(Issue { location: Location::Field(path), message });

  let mut labels = HashSet::new();
  for (i, b) in raw.basis.iter().enumerate() {
    if b.label.is_empty() {
      issue(&mut issues, format!("basis[{i}].label"), "empty label".into());
    }
    if !labels.insert(b.label.as_str()) {
      issue(&mut issues, format!("basis[{i}].label"), format!("duplicate label `{}`", b.label));
    }
    if b.weight < 0 || b.weight > u32::MAX as i64 {
      issue(&mut issues, format!("basis[{i}].weight"), format!("weight {} is not a non-negative 32-bit integer", b.weight));
    }
  }
  if raw.basis.is_empty() {
    issue(&mut issues, "basis".into(), "no basis elements".into());
  }
  if !labels.contains(raw.unit.as_str()) {
    issue(&mut issues, "unit".into(), format!("unknown label `{}`", raw.unit));
  }

  let mut seen: HashMap<(&str, &str), usize> = HashMap::new();
  let mut products = Vec::new();
  for (i, p) in raw.mul.iter().enumerate() {
    for (field, l) in [("left", &p.left), ("right", &p.right)] {
      if !labels.contains(l.as_str()) {
        issue(&mut issues, format!("mul[{i}].{field}"), format!("unknown label `{l}`"));
      }
    }
    if let Some(j) = seen.insert((&p.left, &p.right), i) {
      issue(&mut issues, format!("mul[{i}]"), format!("product `{}`·`{}` already given in mul[{j}]", p.left, p.right));
    }
    if p.left == raw.unit || p.right == raw.unit {
      issue(&mut issues, format!("mul[{i}]"), "products with the unit are implied and must not be listed".into());
    }
    let mut terms = Vec::new();
    for (k, t) in p.result.iter().enumerate() {
      if !labels.contains(t.label.as_str()) {
        issue(&mut issues, format!("mul[{i}].result[{k}].label"), format!("unknown label `{}`", t.label));
      }
      let coeff = match &t.coeff {
        RawCoeff::Int(n) => Ok(Q::from_int(*n)),
        RawCoeff::Text(s) => Q::from_str(s.trim()).map_err(|e| e.to_string()),
      };
      match coeff {
        Ok(c) => terms.push((c, t.label.clone())),
        Err(e) => issue(&mut issues, format!("mul[{i}].result[{k}].coeff"), e),
      }
    }
    products.push((p.left.clone(), p.right.clone(), terms));
  }
  if !issues.is_empty() {
    return Err(FileError::Validation(issues));
  }

  let mut builder = AlgebraBuilder::new(raw.name.clone().unwrap_or_else(|| default_name.to_string())).unit(&raw.unit).window(raw.window);
  for b in &raw.basis {
    builder = builder.element(&b.label, b.weight as u32);
  }
  for (l, r, terms) in products {
    builder = builder.product_q(&l, &r, terms);
  }
  let algebra = builder
    .build()
    .map_err(|e| FileError::Validation(vec![Issue { location: Location::Document, message: e.to_string() }]))?;
  let report = algebra.validate();
  if !report.is_valid() {
    let locate = |v: &Violation| match v {
      Violation::UnitWeight { .. } => Location::Field("unit".into()),
      Violation::Grading { left, right, .. } => seen
        .get(&(left.as_str(), right.as_str()))
        .map_or(Location::Field("mul".into()), |i| Location::Field(format!("mul[{i}]"))),
      Violation::UnitLaw { .. } | Violation::Associativity { .. } => Location::Field("mul".into()),
    };
    let issues = report.violations.iter().map(|v| Issue { location: locate(v), message: v.to_string() }).collect();
    return Err(FileError::Validation(issues));
  }
  Ok(algebra)
}

/// Reads a file; the format is JSON when `json` is set or the extension is `.json`.
pub fn load_algebra(path: &std::path::Path, json: bool) -> Result<GradedAlgebra, FileError> {
  let text = std::fs::read_to_string(path).map_err(|e| FileError::Io { path: path.display().to_string(), message: e.to_string() })?;
  let format = if json || path.extension().is_some_and(|e| e == "json") { Format::Json } else { Format::Toml };
  let stem = path.file_stem().map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
  parse_algebra(&text, format, &stem)
}

#[cfg(test)]
mod tests {
  use super::*;

  const DUAL: &str = r#"
name = "dual"
unit = "1"
basis = [{ label = "1" }, { label = "e", weight = 1 }]
mul = [{ left = "e", right = "e", result = [] }]
"#;

  #[test]
  fn toml_and_json_agree() {
    let a = parse_algebra(DUAL, Format::Toml, "x").unwrap();
    let json = r#"{"name": "dual", "unit": "1", "basis": [{"label": "1", "weight": 0}, {"label": "e", "weight": 1}],
      "mul": [{"left": "e", "right": "e", "result": []}]}"#;
    let b = parse_algebra(json, Format::Json, "x").unwrap();
    assert_eq!(a, b);
    assert_eq!(a.dim(), 2);
    assert_eq!(a.weights(1), &[1]);
  }

  #[test]
  fn rational_coefficients() {
    let text = r#"
unit = "1"
basis = [{ label = "1" }, { label = "x" }]
mul = [{ left = "x", right = "x", result = [{ coeff = "1/2", label = "x" }, { coeff = "-1/4", label = "1" }] }]
"#;
    let a = parse_algebra(text, Format::Toml, "quad").unwrap();
    assert_eq!(a.name(), "quad");
    assert_eq!(a.format_lc(&a.mul_basis(1, 1).unwrap()), "-1/4·1 + 1/2·x");
  }

  #[test]
  fn syntax_errors_carry_line_numbers() {
    let err = parse_algebra("unit = \"1\"\nbasis = [\n  { label = 1 },\n]\n", Format::Toml, "x").unwrap_err();
    match err {
      FileError::Parse(Issue { location: Location::Text { line, .. }, .. }) => assert_eq!(line, 3),
      e => panic!("{e:?}"),
    }
    let err = parse_algebra("{\n\"unit\": \"1\",\n\"basis\": [,]}", Format::Json, "x").unwrap_err();
    assert!(matches!(err, FileError::Parse(Issue { location: Location::Text { line: 3, .. }, .. })));
  }

  #[test]
  fn validation_errors_name_the_field() {
    let text = r#"
unit = "1"
basis = [{ label = "1" }, { label = "e", weight = -1 }, { label = "e" }]
mul = [{ left = "e", right = "f", result = [{ coeff = "1/0", label = "g" }] }]
"#;
    let FileError::Validation(issues) = parse_algebra(text, Format::Toml, "x").unwrap_err() else { panic!() };
    let places: Vec<String> = issues.iter().map(|i| i.location.to_string()).collect();
    assert_eq!(places, ["basis[1].weight", "basis[2].label", "mul[0].right", "mul[0].result[0].label", "mul[0].result[0].coeff"]);
  }

  #[test]
  fn algebraic_violations_are_located() {
    let text = r#"
unit = "1"
basis = [{ label = "1" }, { label = "x", weight = 1 }]
mul = [{ left = "x", right = "x", result = [{ coeff = 1, label = "x" }] }]
"#;
    let FileError::Validation(issues) = parse_algebra(text, Format::Toml, "x").unwrap_err() else { panic!() };
    assert_eq!(issues[0].location, Location::Field("mul[0]".into()));
    let text = r#"
unit = "1"
basis = [{ label = "1" }, { label = "a" }, { label = "b" }]
mul = [{ left = "a", right = "a", result = [{ coeff = 1, label = "b" }] },
       { left = "a", right = "b", result = [{ coeff = 1, label = "a" }] }]
"#;
    let FileError::Validation(issues) = parse_algebra(text, Format::Toml, "x").unwrap_err() else { panic!() };
    assert!(issues.iter().any(|i| i.message.contains("≠")));
  }
}
