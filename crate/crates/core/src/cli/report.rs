//! Machine-readable reports and their text rendering.
//!
//! Both renderings come from the same serialized value: JSON is the value
//! itself, text is an indented walk over it, so the two never disagree.

use serde::Serialize;
use serde_json::Value;

use super::experiment::Model;

#[derive(Debug, Clone, Serialize)]
pub struct ModelSummary {
    pub name: String,
    pub source: String,
    pub histories: Vec<String>,
}

impl ModelSummary {
    pub fn from_model(model: &Model) -> Self {
        ModelSummary {
            name: model.name.clone(),
            source: serde_json::to_value(model.source)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            histories: model.decoherence.space().labels().to_vec(),
        }
    }

    pub fn builtin(name: &str, histories: Vec<String>) -> Self {
        ModelSummary {
            name: name.to_string(),
            source: "builtin".into(),
            histories,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub model: Option<ModelSummary>,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        if let Value::Object(map) = value {
            for (key, v) in &map {
                write_entry(&mut out, 0, key, v);
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn write_entry(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                write_entry(out, depth + 1, k, item);
            }
        }
        Value::Array(items) => {
            for item in items {
                write_item(out, depth + 1, item);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn write_item(out: &mut String, depth: usize, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}- {s}\n"));
        return;
    }
    match v {
        Value::Object(map) => {
            let mut first = true;
            for (k, item) in map {
                if first {
                    // Render the first field on the dash line.
                    let mut line = String::new();
                    write_entry(&mut line, 0, k, item);
                    let mut lines = line.lines();
                    if let Some(head) = lines.next() {
                        out.push_str(&format!("{pad}- {head}\n"));
                    }
                    for rest in lines {
                        out.push_str(&format!("{pad}  {rest}\n"));
                    }
                    first = false;
                } else {
                    write_entry(out, depth + 1, k, item);
                }
            }
            if first {
                out.push_str(&format!("{pad}- {{}}\n"));
            }
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}-\n"));
            for item in items {
                write_item(out, depth + 1, item);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
