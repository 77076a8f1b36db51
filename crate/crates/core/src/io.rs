//! Problem and solution documents.
//!
//! Both are JSON objects. Scalars are written as JSON integers when they are
//! integral and fit in an `i64`, and as strings otherwise: `"-inf"` for `𝟘`,
//! `"p/q"` for other rationals. Matrices are arrays of equal-length rows.
//!
//! ```json
//! {
//!   "kind": "span",
//!   "semifield": "max-plus",
//!   "A": [[2, 0], [4, 1]],
//!   "p": [5, 2],
//!   "q": [1, 2]
//! }
//! ```
//!
//! A `"schedule"` document carries `A`, `B`, `C` and `f` instead.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::optimizer::{CompleteSolution, SpanProblem};
use crate::schedule::{ScheduleInstance, ScheduleSolution};
use crate::semifield::{Scalar, Semifield, SemifieldTag};

impl Serialize for Scalar {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match self.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer, \"-inf\" or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::Finite(num_rational::BigRational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
                Err(E::custom(format!(
                    "non-integer number {v}; write fractions as \"p/q\" strings"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                v.parse().map_err(E::custom)
            }
        }

        d.deserialize_any(ScalarVisitor)
    }
}

impl<S: Semifield> Serialize for Vector<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.entries().serialize(s)
    }
}

impl<'de, S: Semifield> Deserialize<'de> for Vector<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<Scalar>::deserialize(d)?;
        if entries.is_empty() {
            return Err(de::Error::custom("empty vector"));
        }
        Vector::new(entries).map_err(de::Error::custom)
    }
}

impl<S: Semifield> Serialize for Matrix<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, S: Semifield> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RowsVisitor;

        impl<'de> Visitor<'de> for RowsVisitor {
            type Value = Vec<Vec<Scalar>>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-empty array of equal-length rows")
            }

            // Checked row by row so the message can name the offending row; the
            // position serde reports is the end of the enclosing array.
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut rows: Vec<Vec<Scalar>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<Scalar>>()? {
                    if row.is_empty() {
                        return Err(de::Error::custom(format!("row {} is empty", rows.len() + 1)));
                    }
                    if let Some(first) = rows.first() {
                        if first.len() != row.len() {
                            return Err(de::Error::custom(format!(
                                "ragged rows: row {} has {} entries, row 1 has {}",
                                rows.len() + 1,
                                row.len(),
                                first.len()
                            )));
                        }
                    }
                    rows.push(row);
                }
                if rows.is_empty() {
                    return Err(de::Error::custom("empty matrix"));
                }
                Ok(rows)
            }
        }

        let rows = d.deserialize_seq(RowsVisitor)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Span,
    Schedule,
}

/// The mathematical content of a problem document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Span { a: Matrix, p: Vector, q: Vector },
    Schedule { a: Matrix, b: Matrix, c: Matrix, f: Vector },
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::Span { .. } => ProblemKind::Span,
            Problem::Schedule { .. } => ProblemKind::Schedule,
        }
    }

    /// Dimension of the unknown vector.
    pub fn dim(&self) -> usize {
        match self {
            Problem::Span { q, .. } => q.dim(),
            Problem::Schedule { f, .. } => f.dim(),
        }
    }

    pub fn span_problem(&self) -> Result<SpanProblem> {
        match self {
            Problem::Span { a, p, q } => SpanProblem::new(a.clone(), p.clone(), q.clone()),
            Problem::Schedule { .. } => Ok(self.schedule_instance()?.reduced_problem()),
        }
    }

    pub fn schedule_instance(&self) -> Result<ScheduleInstance> {
        match self {
            Problem::Schedule { a, b, c, f } => {
                ScheduleInstance::new(a.clone(), b.clone(), c.clone(), f.clone())
            }
            Problem::Span { .. } => Err(Error::Validation(
                "expected a schedule document, found kind \"span\"".into(),
            )),
        }
    }
}

/// A parsed and validated problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemDocument {
    pub semifield: SemifieldTag,
    pub problem: Problem,
    pub metadata: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    kind: ProblemKind,
    #[serde(default = "default_semifield")]
    semifield: SemifieldTag,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    a: Option<Matrix>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<Matrix>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    c: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<Vector>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    metadata: BTreeMap<String, String>,
}

fn default_semifield() -> SemifieldTag {
    SemifieldTag::MaxPlus
}

fn parse_error(e: serde_json::Error) -> Error {
    let message = e.to_string();
    // serde_json appends " at line L column C"; the location is kept separately.
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message,
    }
}

fn require<T>(field: Option<T>, kind: &str, name: &str) -> Result<T> {
    field.ok_or_else(|| Error::Validation(format!("{kind} document is missing field `{name}`")))
}

fn forbid<T>(field: &Option<T>, kind: &str, name: &str) -> Result<()> {
    match field {
        Some(_) => Err(Error::Validation(format!(
            "field `{name}` does not belong in a {kind} document"
        ))),
        None => Ok(()),
    }
}

/// Parses and validates a problem document. Syntax errors carry the line and
/// column; violated hypotheses (shapes, regularity, feasibility of the
/// precedence constraints) are reported as the corresponding solver error.
pub fn parse_problem(text: &str) -> Result<ProblemDocument> {
    let raw: RawProblem = serde_json::from_str(text).map_err(parse_error)?;
    if raw.semifield != SemifieldTag::MaxPlus {
        return Err(Error::Validation(format!(
            "semifield {} is not supported in documents; use max-plus",
            raw.semifield
        )));
    }
    let problem = match raw.kind {
        ProblemKind::Span => {
            for (field, name) in [(&raw.b, "B"), (&raw.c, "C")] {
                forbid(field, "span", name)?;
            }
            forbid(&raw.f, "span", "f")?;
            Problem::Span {
                a: require(raw.a, "span", "A")?,
                p: require(raw.p, "span", "p")?,
                q: require(raw.q, "span", "q")?,
            }
        }
        ProblemKind::Schedule => {
            forbid(&raw.p, "schedule", "p")?;
            forbid(&raw.q, "schedule", "q")?;
            Problem::Schedule {
                a: require(raw.a, "schedule", "A")?,
                b: require(raw.b, "schedule", "B")?,
                c: require(raw.c, "schedule", "C")?,
                f: require(raw.f, "schedule", "f")?,
            }
        }
    };
    match &problem {
        Problem::Span { .. } => {
            problem.span_problem()?;
        }
        Problem::Schedule { .. } => {
            problem.schedule_instance()?;
        }
    }
    Ok(ProblemDocument {
        semifield: raw.semifield,
        problem,
        metadata: raw.metadata,
    })
}

impl ProblemDocument {
    pub fn to_json(&self) -> String {
        let mut raw = RawProblem {
            kind: self.problem.kind(),
            semifield: self.semifield,
            a: None,
            b: None,
            c: None,
            p: None,
            q: None,
            f: None,
            metadata: self.metadata.clone(),
        };
        match &self.problem {
            Problem::Span { a, p, q } => {
                raw.a = Some(a.clone());
                raw.p = Some(p.clone());
                raw.q = Some(q.clone());
            }
            Problem::Schedule { a, b, c, f } => {
                raw.a = Some(a.clone());
                raw.b = Some(b.clone());
                raw.c = Some(c.clone());
                raw.f = Some(f.clone());
            }
        }
        to_canonical_json(&serde_json::to_value(&raw).expect("documents are plain data"))
    }

    /// Hex SHA-256 of the canonical serialisation, so formatting differences
    /// in the input file do not change it.
    pub fn sha256(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Statistics {
    /// Selection matrices enumerated.
    pub visited: usize,
    /// Selection matrices skipped by pruning.
    pub pruned: u128,
}

/// Solver output for either problem kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub kind: ProblemKind,
    pub input_sha256: String,
    pub delta: Scalar,
    /// `S₀`; for schedules, the complete solution of the reduced problem.
    pub generators: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_generators: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_generators: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_bound: Option<Vector>,
    /// Whether collinear generator columns were merged.
    #[serde(default)]
    pub compact: bool,
    pub statistics: Statistics,
}

impl SolutionDocument {
    pub fn from_span(doc: &ProblemDocument, sol: &CompleteSolution) -> Self {
        SolutionDocument {
            kind: ProblemKind::Span,
            input_sha256: doc.sha256(),
            delta: sol.delta.clone(),
            generators: sol.generators.generators().clone(),
            x_generators: None,
            y_generators: None,
            coeff_bound: None,
            compact: false,
            statistics: Statistics {
                visited: sol.enumerated_count,
                pruned: sol.pruned_count,
            },
        }
    }

    pub fn from_schedule(doc: &ProblemDocument, sol: &ScheduleSolution, compact: bool) -> Self {
        SolutionDocument {
            kind: ProblemKind::Schedule,
            input_sha256: doc.sha256(),
            delta: sol.delta.clone(),
            generators: sol.s0.clone(),
            x_generators: Some(sol.x_generators.clone()),
            y_generators: Some(sol.y_generators.clone()),
            coeff_bound: Some(sol.coeff_bound.clone()),
            compact,
            statistics: Statistics {
                visited: sol.enumerated_count,
                pruned: sol.pruned_count,
            },
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(&serde_json::to_value(self).expect("documents are plain data"))
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument> {
    serde_json::from_str(text).map_err(parse_error)
}

/// Pretty JSON with arrays of scalars kept on one line, so matrices print one
/// row per line. Key order is the field order of the serialised struct.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, v, depth + 1);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, v, depth + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&v.to_string());
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
