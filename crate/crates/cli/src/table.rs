//! Column tables and their CSV / JSON renderings.
//!
//! Every float is written as `{:.16e}` (17 significant digits), so a table
//! renders to the same bytes on every platform and round-trips exactly.

use std::fmt::Write as _;

use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<(String, Vec<f64>)>,
    metadata: Vec<(String, Value)>,
}

impl ResultTable {
    pub fn new(columns: Vec<(String, Vec<f64>)>) -> Result<Self, CliError> {
        if let Some((first, rest)) = columns.split_first() {
            for (name, col) in rest {
                if col.len() != first.1.len() {
                    return Err(CliError::Usage(format!(
                        "column {name:?} has {} rows, {:?} has {}",
                        col.len(),
                        first.0,
                        first.1.len()
                    )));
                }
            }
        }
        for (i, (name, _)) in columns.iter().enumerate() {
            if columns[..i].iter().any(|(n, _)| n == name) {
                return Err(CliError::Usage(format!("duplicate column {name:?}")));
            }
        }
        Ok(Self {
            columns,
            metadata: Vec::new(),
        })
    }

    /// Adds a metadata entry, replacing any previous value under `key`.
    pub fn set_meta(&mut self, key: &str, value: Value) {
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&Value> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn metadata(&self) -> &[(String, Value)] {
        &self.metadata
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_slice())
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    /// Metadata as `# key: value` lines, then a header row and one line per
    /// row. LF line endings, no quoting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.metadata {
            let text = match value {
                Value::String(s) => s.clone(),
                other => json_value(other),
            };
            let _ = writeln!(out, "# {key}: {text}");
        }
        out.push_str(&self.column_names().join(","));
        out.push('\n');
        for row in 0..self.rows() {
            let cells: Vec<String> = self.columns.iter().map(|(_, c)| float(c[row])).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"metadata": {...}, "columns": {name: [values]}}`, keys in insertion
    /// order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"metadata\": {");
        for (i, (key, value)) in self.metadata.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let _ = write!(
                out,
                "{sep}\n    {}: {}",
                json_string(key),
                json_value(value)
            );
        }
        out.push_str(if self.metadata.is_empty() {
            "},\n"
        } else {
            "\n  },\n"
        });
        out.push_str("  \"columns\": {");
        for (i, (name, col)) in self.columns.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let cells: Vec<String> = col.iter().map(|&x| json_float(x)).collect();
            let _ = write!(
                out,
                "{sep}\n    {}: [{}]",
                json_string(name),
                cells.join(", ")
            );
        }
        out.push_str(if self.columns.is_empty() {
            "}\n}\n"
        } else {
            "\n  }\n}\n"
        });
        out
    }
}

/// 17 significant digits in scientific notation.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_float(x: f64) -> String {
    if x.is_finite() {
        float(x)
    } else {
        "null".into()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Compact JSON with floats in the fixed table format.
fn json_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => json_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(json_value).collect::<Vec<_>>().join(",")
        ),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter()
                .map(|(k, v)| format!("{}:{}", json_string(k), json_value(v)))
                .collect::<Vec<_>>()
                .join(",")
        ),
        other => other.to_string(),
    }
}
