//! One row of output per parameter point, for each model.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::{json, Value};

use qtard::entanglement::{
    ground_state_covariance, log_negativity_gaussian, negativity_fock_oracle,
};
use qtard::full_model::{
    dispersive_single_mode, dressed_transition, perturbative_transition_shift,
    refractive_modulation,
};
use qtard::vdw::{dipole_coupling_lambda, exact_ground_shift, perturbative_ground_shift};
use qtard::{FullModelConfig, VdwConfig};

use crate::config::{Model, Sweep};
use crate::error::CliError;
use crate::fit::fit_power_law;
use crate::params::Params;
use crate::table::ResultTable;

pub const UNITS_NOTE: &str = "reduced units (hbar = 1); values are not converted";

pub fn output_columns(model: Model) -> &'static [&'static str] {
    match model {
        Model::Vdw => &["R", "lambda", "exact_shift", "pert_shift"],
        Model::Entangle => &["u", "E_N_gaussian", "E_N_fock", "abs_diff"],
        Model::Full => &[
            "bare_transition",
            "dressed_transition",
            "shift",
            "pert_shift",
            "overlap_ground",
            "overlap_excited",
            "converged",
        ],
        Model::Dispersive => &["pert_shift", "exact_shift", "converged"],
        Model::Refractive => &["omega_eff", "shift"],
    }
}

/// Evaluates one point; the values line up with [`output_columns`].
pub fn evaluate(p: &Params) -> Result<Vec<f64>, CliError> {
    match p.model() {
        Model::Vdw => {
            let cfg = VdwConfig::new(
                p.real("mass"),
                p.real("omega0"),
                p.real("charge"),
                p.real("coulomb_k"),
                p.real("R"),
            )?;
            Ok(vec![
                cfg.separation,
                dipole_coupling_lambda(&cfg),
                exact_ground_shift(&cfg)?,
                perturbative_ground_shift(&cfg),
            ])
        }
        Model::Entangle => {
            let u = p.real("u");
            let cfg = VdwConfig::from_coupling_ratio(p.real("mass"), p.real("omega0"), u)?;
            let gaussian = log_negativity_gaussian(&ground_state_covariance(&cfg)?);
            let fock = negativity_fock_oracle(&cfg, p.count("n_max"))?.value;
            Ok(vec![u, gaussian, fock, (gaussian - fock).abs()])
        }
        Model::Full => {
            let fields = p.list("field_freqs");
            let rows = p.matrix("f");
            let ncols = rows.first().map_or(fields.len(), Vec::len);
            let f = DMatrix::from_fn(rows.len(), ncols, |l, k| rows[l][k]);
            let cfg = FullModelConfig::new(
                p.real("omega"),
                fields,
                p.list("dipole_freqs"),
                p.list("g"),
                f,
                p.count("n_max"),
            )?
            .with_max_dim(p.count("max_dim"));
            let report = dressed_transition(&cfg)?;
            let pert = perturbative_transition_shift(&cfg, p.real("degeneracy_tol"))?;
            Ok(vec![
                report.bare_transition,
                report.dressed_transition,
                report.shift,
                pert,
                report.overlap_ground,
                report.overlap_excited,
                flag(report.converged),
            ])
        }
        Model::Dispersive => {
            let (omega, omega_c, g) = (p.real("omega"), p.real("omega_c"), p.real("g"));
            let pert = dispersive_single_mode(omega, omega_c, g)?;
            let report = dressed_transition(&FullModelConfig::single_mode(
                omega,
                omega_c,
                g,
                p.count("n_max"),
            )?)?;
            Ok(vec![pert, report.shift, flag(report.converged)])
        }
        Model::Refractive => {
            let omega = p.real("omega");
            let eff = refractive_modulation(omega, p.real("n"))?;
            Ok(vec![eff, eff - omega])
        }
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Evaluates the sweep values `xs` in parallel. Rows come back in the order
/// of `xs`; on failure the error of the earliest failing point is returned.
pub fn evaluate_sweep(base: &Params, sweep: &Sweep, xs: &[f64]) -> Result<Vec<Vec<f64>>, CliError> {
    let rows: Vec<Result<Vec<f64>, CliError>> = xs
        .par_iter()
        .map(|&x| {
            let mut p = base.clone();
            p.set_real(&sweep.parameter, x)?;
            evaluate(&p).map_err(|e| annotate(e, &sweep.parameter, x))
        })
        .collect();
    rows.into_iter().collect()
}

fn annotate(e: CliError, key: &str, x: f64) -> CliError {
    match e {
        CliError::Usage(m) => CliError::Usage(format!("at {key} = {x}: {m}")),
        other => other,
    }
}

/// Runs a resolved scenario into a table with metadata.
pub fn run_scenario(
    params: &Params,
    sweep: Option<&Sweep>,
    units: Option<&Value>,
) -> Result<ResultTable, CliError> {
    let model = params.model();
    let names = output_columns(model);
    let (xs, rows) = match sweep {
        Some(s) => {
            params.check_sweepable(&s.parameter)?;
            let xs = s.values();
            let rows = evaluate_sweep(params, s, &xs)?;
            (Some(xs), rows)
        }
        None => (None, vec![evaluate(params)?]),
    };

    let mut columns: Vec<(String, Vec<f64>)> = Vec::new();
    if let (Some(s), Some(xs)) = (sweep, &xs) {
        if !names.contains(&s.parameter.as_str()) {
            columns.push((s.parameter.clone(), xs.clone()));
        }
    }
    for (j, name) in names.iter().enumerate() {
        columns.push((name.to_string(), rows.iter().map(|r| r[j]).collect()));
    }

    let mut table = ResultTable::new(columns)?;
    table.set_meta("model", json!(model.name()));
    table.set_meta("version", json!(env!("CARGO_PKG_VERSION")));
    table.set_meta("units", json!(UNITS_NOTE));
    table.set_meta("parameters", params.to_json());
    if let Some(s) = sweep {
        table.set_meta("sweep", serde_json::to_value(s).expect("sweep serializes"));
    }
    if let Some(u) = units {
        table.set_meta("si_scale", u.clone());
    }
    summarize(model, sweep, &mut table);
    Ok(table)
}

/// Derived checks that belong next to the data.
fn summarize(model: Model, sweep: Option<&Sweep>, table: &mut ResultTable) {
    match model {
        Model::Vdw if sweep.is_some_and(|s| s.parameter == "R") => {
            let r = table.column("R").expect("vdw table has R").to_vec();
            for (col, prefix) in [("pert_shift", "pert"), ("exact_shift", "exact")] {
                let ys = table.column(col).expect("vdw table has shifts").to_vec();
                match fit_power_law(&r, &ys) {
                    Ok(fit) => {
                        table.set_meta(&format!("{prefix}_slope"), json!(fit.slope));
                        table.set_meta(
                            &format!("{prefix}_fit_max_residual"),
                            json!(fit.max_residual),
                        );
                    }
                    Err(e) => table.set_meta(
                        &format!("{prefix}_slope"),
                        json!(format!("not fitted: {e}")),
                    ),
                }
            }
        }
        Model::Entangle => {
            let max = table
                .column("abs_diff")
                .expect("entangle table has abs_diff")
                .iter()
                .fold(0.0, |a: f64, &b| a.max(b));
            table.set_meta("max_abs_diff", json!(max));
        }
        _ => {}
    }
}
