//! Experiment files.
//!
//! ```json
//! {
//!   "name": "three-slit",
//!   "histories": ["A", "B", "C"],
//!   "amplitudes": { "re": [1, -1, 1], "im": [0, 0, 0] },
//!   "events": { "AC": ["A", "C"] },
//!   "options": { "epsilon": 0.001, "tolerance": 1e-9, "cap": 20 }
//! }
//! ```
//!
//! Exactly one of `amplitudes` (a complex vector) or `decoherence` (a
//! complex `n × n` matrix, `{"re": [[..]], "im": [[..]]}`) must be given. `im`
//! may be omitted and defaults to zeros. `events` and `options` are optional.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Event, HistorySpace};
use crate::error::Error;
use crate::measure::DecoherenceFunctional;
use crate::{Limits, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexVector {
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexMatrix {
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub epsilon: f64,
    pub tolerance: f64,
    pub cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            epsilon: 1e-3,
            tolerance: DEFAULT_TOLERANCE,
            cap: Limits::default().cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub name: String,
    pub histories: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<ComplexVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoherence: Option<ComplexMatrix>,
    #[serde(default)]
    pub events: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub options: Options,
}

/// Problems with the document itself (syntax, shape, labels).
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Dotted path of the offending field, when known.
    pub field: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            field: Some(field.into()),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(line), Some(column)) = (self.line, self.column) {
            write!(f, "line {line}, column {column}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

/// Shape and label problems are parse errors; a well-formed document whose
/// numbers do not define a model (unnormalized amplitudes) is `Invalid`.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    Parse(ParseError),
    Invalid(Error),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Parse(e) => e.fmt(f),
            ModelError::Invalid(e) => e.fmt(f),
        }
    }
}

/// Which representation the file used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Amplitudes,
    Decoherence,
}

/// A parsed, shape-checked experiment.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub source: SourceKind,
    pub decoherence: DecoherenceFunctional,
    pub events: BTreeMap<String, Event>,
    pub options: Options,
}

impl ExperimentFile {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError {
            field: None,
            line: Some(e.line()),
            column: Some(e.column()),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn model(&self) -> Result<Model, ModelError> {
        let space = HistorySpace::new(self.histories.iter().cloned())
            .map_err(|e| ModelError::Parse(ParseError::field("histories", e.to_string())))?;
        let n = space.len();
        let (source, d) = match (&self.amplitudes, &self.decoherence) {
            (Some(_), Some(_)) => {
                return Err(ModelError::Parse(ParseError::field(
                    "amplitudes",
                    "give either `amplitudes` or `decoherence`, not both",
                )))
            }
            (None, None) => {
                return Err(ModelError::Parse(ParseError::field(
                    "decoherence",
                    "one of `amplitudes` or `decoherence` is required",
                )))
            }
            (Some(a), None) => {
                let im = a.im.clone().unwrap_or_else(|| vec![0.0; a.re.len()]);
                for (field, len) in [("amplitudes.re", a.re.len()), ("amplitudes.im", im.len())] {
                    if len != n {
                        return Err(ModelError::Parse(ParseError::field(
                            field,
                            format!("expected {n} entries, got {len}"),
                        )));
                    }
                }
                let amps: Vec<Complex64> =
                    a.re.iter()
                        .zip(&im)
                        .map(|(&r, &i)| Complex64::new(r, i))
                        .collect();
                let d = DecoherenceFunctional::from_amplitudes(&space, &amps)
                    .map_err(ModelError::Invalid)?;
                (SourceKind::Amplitudes, d)
            }
            (None, Some(m)) => {
                let im =
                    m.im.clone()
                        .unwrap_or_else(|| vec![vec![0.0; n]; m.re.len()]);
                for (field, rows) in [("decoherence.re", &m.re), ("decoherence.im", &im)] {
                    if rows.len() != n {
                        return Err(ModelError::Parse(ParseError::field(
                            field,
                            format!("expected {n} rows, got {}", rows.len()),
                        )));
                    }
                    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                        return Err(ModelError::Parse(ParseError::field(
                            format!("{field}[{i}]"),
                            format!("expected {n} columns, got {}", row.len()),
                        )));
                    }
                }
                let d = DecoherenceFunctional::from_parts(&space, &m.re, &im)
                    .map_err(ModelError::Invalid)?;
                (SourceKind::Decoherence, d)
            }
        };
        let mut events = BTreeMap::new();
        for (name, labels) in &self.events {
            let event = Event::from_labels(&space, labels).map_err(|e| {
                ModelError::Parse(ParseError::field(format!("events.{name}"), e.to_string()))
            })?;
            events.insert(name.clone(), event);
        }
        let o = &self.options;
        if !(o.epsilon >= 0.0) {
            return Err(ModelError::Parse(ParseError::field(
                "options.epsilon",
                "must be non-negative",
            )));
        }
        if !(o.tolerance > 0.0) {
            return Err(ModelError::Parse(ParseError::field(
                "options.tolerance",
                "must be positive",
            )));
        }
        Ok(Model {
            name: self.name.clone(),
            source,
            decoherence: d.with_tolerance(o.tolerance),
            events,
            options: *o,
        })
    }
}

/// Reads a file from disk; I/O failures are reported as parse errors.
pub fn read_experiment(path: &Path) -> Result<ExperimentFile, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        field: None,
        line: None,
        column: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    ExperimentFile::from_json(&text)
}
