//! Scenario files, inline overrides and sweep specifications.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Full,
    Vdw,
    Entangle,
    Dispersive,
    Refractive,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Full => "full",
            Model::Vdw => "vdw",
            Model::Entangle => "entangle",
            Model::Dispersive => "dispersive",
            Model::Refractive => "refractive",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub log: bool,
}

impl Sweep {
    /// Parses `key=start:stop:points` with an optional trailing `:log`.
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Usage(format!("--sweep {spec:?}: {why}"));
        let (key, range) = spec
            .split_once('=')
            .ok_or_else(|| bad("expected key=start:stop:points[:log]"))?;
        let parts: Vec<&str> = range.split(':').collect();
        let log = match parts.len() {
            3 => false,
            4 if parts[3] == "log" => true,
            4 if parts[3] == "lin" => false,
            _ => return Err(bad("expected key=start:stop:points[:log]")),
        };
        let number = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| bad(&format!("{s:?} is not a number")))
        };
        let sweep = Self {
            parameter: key.trim().to_string(),
            start: number(parts[0])?,
            stop: number(parts[1])?,
            points: parts[2]
                .trim()
                .parse()
                .map_err(|_| bad("points must be a positive integer"))?,
            log,
        };
        sweep.validate()?;
        Ok(sweep)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |why: String| {
            Err(CliError::Usage(format!(
                "sweep over {:?}: {why}",
                self.parameter
            )))
        };
        if self.points < 2 {
            return bad(format!("need at least 2 points, got {}", self.points));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return bad("endpoints must be finite".into());
        }
        if self.log && !(self.start > 0.0 && self.stop > 0.0) {
            return bad("log spacing needs positive endpoints".into());
        }
        Ok(())
    }

    /// Sweep values in order. Endpoints are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.points - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

/// A model run as read from a JSON file, before inline overrides.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub model: Option<Model>,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub output: Output,
    /// Free-form SI scale factors. Echoed into the metadata, never applied.
    #[serde(default)]
    pub units: Option<Map<String, Value>>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    /// Applies `key=value`, where the value is JSON (`omega=2`, `g=[0.1,0.2]`).
    /// A value that is not valid JSON is taken as a string.
    pub fn apply_set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set {assignment:?}: expected key=value")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::Usage(format!("--set {assignment:?}: empty key")));
        }
        let value = serde_json::from_str(raw.trim())
            .unwrap_or_else(|_| Value::String(raw.trim().to_string()));
        self.parameters.insert(key.to_string(), value);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing_and_spacing() {
        let s = Sweep::parse("R=5:50:10:log").unwrap();
        assert!(s.log);
        let v = s.values();
        assert_eq!((v[0], v[9]), (5.0, 50.0));
        let ratio = v[1] / v[0];
        assert!(v.windows(2).all(|w| (w[1] / w[0] - ratio).abs() < 1e-12));

        let lin = Sweep::parse("u=0:0.3:4").unwrap().values();
        assert_eq!(lin.len(), 4);
        assert!((lin[1] - 0.1).abs() < 1e-15);

        for bad in [
            "R",
            "R=1:2",
            "R=1:2:1",
            "R=a:2:3",
            "R=0:2:3:log",
            "R=1:2:3:cubic",
        ] {
            assert!(
                matches!(Sweep::parse(bad), Err(CliError::Usage(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn config_schema() {
        let cfg = ScenarioConfig::from_json(
            r#"{"model":"vdw","parameters":{"R":3},"sweep":{"parameter":"R","start":5,"stop":50,"points":4,"log":true},"output":{"format":"json"}}"#,
        )
        .unwrap();
        assert_eq!(cfg.model, Some(Model::Vdw));
        assert_eq!(cfg.output.format, Format::Json);
        assert!(ScenarioConfig::from_json(r#"{"modle":"vdw"}"#).is_err());
        assert!(ScenarioConfig::from_json(r#"{"model":"quartz"}"#).is_err());
    }

    #[test]
    fn set_parses_json_values() {
        let mut cfg = ScenarioConfig::default();
        cfg.apply_set("g=[0.1, 0.2]").unwrap();
        cfg.apply_set("omega=2").unwrap();
        assert_eq!(cfg.parameters["g"], serde_json::json!([0.1, 0.2]));
        assert_eq!(cfg.parameters["omega"], serde_json::json!(2));
        assert!(cfg.apply_set("omega").is_err());
    }
}
