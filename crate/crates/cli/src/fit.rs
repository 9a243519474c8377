//! Least-squares power laws on log-log axes.

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    /// Intercept of `ln|y|` at `ln x = 0`.
    pub intercept: f64,
    /// Largest `|ln|y| − (slope·ln x + intercept)|` over the data.
    pub max_residual: f64,
}

/// Fits `ln|y| = slope·ln x + intercept`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit, CliError> {
    let bad = |why: String| Err(CliError::Usage(format!("power-law fit: {why}")));
    if xs.len() != ys.len() {
        return bad(format!("{} x values but {} y values", xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return bad("need at least 2 points".into());
    }
    if let Some(x) = xs.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return bad(format!("x = {x} is not a positive finite number"));
    }
    if let Some(y) = ys.iter().find(|y| !(y.abs() > 0.0 && y.is_finite())) {
        return bad(format!("y = {y} is zero or not finite"));
    }

    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return bad("all x values are equal".into());
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    Ok(PowerLawFit {
        slope,
        intercept,
        max_residual,
    })
}
