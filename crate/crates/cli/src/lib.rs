//! Scenario runner for the `qtard` models.
//!
//! ```text
//! qtard <model> [--config <path>] [--set key=value ...]
//!       [--sweep key=start:stop:points[:log]] [--format csv|json] [--out <path>]
//! ```
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 model error
//! (degeneracy, instability, identification failure), 4 I/O error.

pub mod config;
pub mod error;
pub mod fit;
pub mod models;
pub mod params;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde_json::Value;

pub use config::{Format, Model, ScenarioConfig, Sweep};
pub use error::CliError;
pub use fit::{fit_power_law, PowerLawFit};
pub use params::Params;
pub use table::ResultTable;

#[derive(Debug, Parser)]
#[command(
    name = "qtard",
    version,
    about = "Qubit, field and dipole models: single runs and parameter sweeps"
)]
pub struct Cli {
    /// Model to run.
    #[arg(value_enum)]
    pub model: Model,
    /// JSON scenario file; inline flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Parameter override, `key=value` with a JSON value. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// `key=start:stop:points[:log]`. List and matrix entries are addressed
    /// as `g.0` or `f.0.1`.
    #[arg(long, value_name = "SPEC")]
    pub sweep: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A fully resolved run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub params: Params,
    pub sweep: Option<Sweep>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub units: Option<Value>,
}

impl Scenario {
    /// Merges the config file (if any) with inline flags; flags win.
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut cfg = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
                ScenarioConfig::from_json(&text)?
            }
            None => ScenarioConfig::default(),
        };
        if let Some(m) = cfg.model {
            if m != cli.model {
                return Err(CliError::Usage(format!(
                    "config file is for model {:?} but {:?} was requested",
                    m.name(),
                    cli.model.name()
                )));
            }
        }
        for assignment in &cli.set {
            cfg.apply_set(assignment)?;
        }
        if let Some(spec) = &cli.sweep {
            cfg.sweep = Some(Sweep::parse(spec)?);
        }
        if let Some(s) = &cfg.sweep {
            s.validate()?;
        }
        let params = Params::resolve(cli.model, &cfg.parameters)?;
        if let Some(s) = &cfg.sweep {
            params.check_sweepable(&s.parameter)?;
        }
        Ok(Self {
            params,
            sweep: cfg.sweep,
            format: cli.format.unwrap_or(cfg.output.format),
            out: cli.out.clone().or(cfg.output.path),
            units: cfg.units.map(Value::Object),
        })
    }

    pub fn run(&self) -> Result<ResultTable, CliError> {
        models::run_scenario(&self.params, self.sweep.as_ref(), self.units.as_ref())
    }

    pub fn render(&self, table: &ResultTable) -> String {
        match self.format {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(),
        }
    }
}

/// Parses `args`, runs the scenario and writes the table to `--out` or to
/// `stdout`. Help and version text also go to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return write!(stdout, "{e}").map_err(|e| CliError::Io(format!("writing output: {e}")));
        }
        Err(e) => {
            return Err(CliError::Usage(
                e.to_string()
                    .trim_end()
                    .trim_start_matches("error: ")
                    .to_string(),
            ))
        }
    };
    let scenario = Scenario::from_cli(&cli)?;
    let text = scenario.render(&scenario.run()?);
    match &scenario.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::Io(format!("writing output: {e}"))),
    }
}

/// [`run`] with diagnostics on standard error; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    match run(args, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qtard: {e}");
            e.exit_code()
        }
    }
}
