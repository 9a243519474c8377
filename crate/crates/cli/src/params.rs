//! Per-model parameter schemas, defaults and typed access.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::config::Model;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    Count,
    RealList,
    RealMatrix,
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Real => "a number",
            Kind::Count => "a nonnegative integer",
            Kind::RealList => "a list of numbers",
            Kind::RealMatrix => "a list of equal-length lists of numbers",
        }
    }

    fn accepts(self, v: &Value) -> bool {
        let reals = |v: &Value| v.as_array().is_some_and(|a| a.iter().all(Value::is_number));
        match self {
            Kind::Real => v.is_number(),
            Kind::Count => v.is_u64(),
            Kind::RealList => reals(v),
            Kind::RealMatrix => v.as_array().is_some_and(|rows| {
                rows.iter().all(reals)
                    && rows
                        .windows(2)
                        .all(|w| w[0].as_array().map(Vec::len) == w[1].as_array().map(Vec::len))
            }),
        }
    }
}

/// `(name, kind, default)` for every parameter a model accepts.
pub fn schema(model: Model) -> Vec<(&'static str, Kind, Value)> {
    use Kind::*;
    match model {
        Model::Vdw => vec![
            ("mass", Real, json!(1.0)),
            ("omega0", Real, json!(1.0)),
            ("charge", Real, json!(1.0)),
            ("coulomb_k", Real, json!(1.0)),
            ("R", Real, json!(2.0)),
        ],
        Model::Entangle => vec![
            ("u", Real, json!(0.1)),
            ("mass", Real, json!(1.0)),
            ("omega0", Real, json!(1.0)),
            ("n_max", Count, json!(24)),
        ],
        Model::Full => vec![
            ("omega", Real, json!(1.0)),
            ("field_freqs", RealList, json!([5.0])),
            ("dipole_freqs", RealList, json!([3.0])),
            ("g", RealList, json!([0.01])),
            ("f", RealMatrix, json!([[0.01]])),
            ("n_max", Count, json!(14)),
            ("max_dim", Count, json!(qtard::full_model::DEFAULT_MAX_DIM)),
            ("degeneracy_tol", Real, json!(1e-9)),
        ],
        Model::Dispersive => vec![
            ("omega", Real, json!(1.0)),
            ("omega_c", Real, json!(5.0)),
            ("g", Real, json!(0.01)),
            ("n_max", Count, json!(30)),
        ],
        Model::Refractive => vec![("omega", Real, json!(1.0)), ("n", Real, json!(1.25))],
    }
}

/// Parameters of one model with defaults filled in and every value type-checked.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    model: Model,
    values: BTreeMap<String, Value>,
}

impl Params {
    pub fn resolve(model: Model, overrides: &Map<String, Value>) -> Result<Self, CliError> {
        let spec = schema(model);
        let mut values: BTreeMap<String, Value> = spec
            .iter()
            .map(|(k, _, d)| (k.to_string(), d.clone()))
            .collect();
        for (key, value) in overrides {
            let Some((_, kind, _)) = spec.iter().find(|(k, _, _)| k == key) else {
                let known: Vec<&str> = spec.iter().map(|(k, _, _)| *k).collect();
                return Err(CliError::Usage(format!(
                    "unknown parameter {key:?} for model {}; expected one of {}",
                    model.name(),
                    known.join(", ")
                )));
            };
            if !kind.accepts(value) {
                return Err(CliError::Usage(format!(
                    "parameter {key:?} must be {}, got {value}",
                    kind.describe()
                )));
            }
            values.insert(key.clone(), value.clone());
        }
        Ok(Self { model, values })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Values as a JSON object, for the metadata echo.
    pub fn to_json(&self) -> Value {
        Value::Object(
            self.values
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }

    pub fn real(&self, key: &str) -> f64 {
        self.values[key].as_f64().expect("type-checked at resolve")
    }

    pub fn count(&self, key: &str) -> usize {
        self.values[key].as_u64().expect("type-checked at resolve") as usize
    }

    pub fn list(&self, key: &str) -> Vec<f64> {
        self.values[key]
            .as_array()
            .expect("type-checked at resolve")
            .iter()
            .filter_map(Value::as_f64)
            .collect()
    }

    pub fn matrix(&self, key: &str) -> Vec<Vec<f64>> {
        let rows = self.values[key]
            .as_array()
            .expect("type-checked at resolve");
        rows.iter()
            .map(|r| {
                r.as_array()
                    .map(|r| r.iter().filter_map(Value::as_f64).collect())
                    .unwrap_or_default()
            })
            .collect()
    }

    /// Checks that `path` names a real-valued entry: a real parameter
    /// (`omega`), a list element (`g.0`) or a matrix element (`f.0.1`).
    pub fn check_sweepable(&self, path: &str) -> Result<(), CliError> {
        self.clone().set_real(path, 0.0)
    }

    /// Overwrites the real entry at `path`; see [`Params::check_sweepable`].
    pub fn set_real(&mut self, path: &str, x: f64) -> Result<(), CliError> {
        let bad = |why: String| {
            CliError::Usage(format!(
                "cannot sweep {path:?} for model {}: {why}",
                self.model.name()
            ))
        };
        let mut parts = path.split('.');
        let key = parts.next().unwrap_or_default();
        let indices: Vec<&str> = parts.collect();
        let kind = schema(self.model)
            .into_iter()
            .find(|(k, _, _)| *k == key)
            .map(|(_, kind, _)| kind)
            .ok_or_else(|| bad("unknown parameter".into()))?;
        let depth = match kind {
            Kind::Real => 0,
            Kind::RealList => 1,
            Kind::RealMatrix => 2,
            Kind::Count => return Err(bad("integer parameters cannot be swept".into())),
        };
        if indices.len() != depth {
            return Err(bad(format!(
                "expected {depth} index component(s), as in {}",
                example_path(key, depth)
            )));
        }
        let mut slot = self.values.get_mut(key).expect("present after resolve");
        for idx in indices {
            let i: usize = idx
                .parse()
                .map_err(|_| bad(format!("{idx:?} is not an index")))?;
            let len = slot.as_array().map_or(0, Vec::len);
            slot = slot
                .as_array_mut()
                .and_then(|a| a.get_mut(i))
                .ok_or_else(|| bad(format!("index {i} out of range (length {len})")))?;
        }
        *slot = json!(x);
        Ok(())
    }
}

fn example_path(key: &str, depth: usize) -> String {
    std::iter::once(key.to_string())
        .chain(std::iter::repeat_n("0".to_string(), depth))
        .collect::<Vec<_>>()
        .join(".")
}
