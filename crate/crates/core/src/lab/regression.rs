use super::report::{SlopeFit, MIN_POINTS_PER_DECADE, RESIDUAL_LIMIT};
use crate::error::{Error, Result};

/// Least-squares line through `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// RMS of `y - (slope x + intercept)`.
    pub rms: f64,
    pub points: usize,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Precondition(format!("a line fit needs two or more paired points, got {}", xs.len())));
    }
    if let Some(bad) = xs.iter().chain(ys).find(|v| !v.is_finite()) {
        return Err(Error::Precondition(format!("non-finite value {bad} in fit data")));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Precondition("fit abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum::<f64>() / n).sqrt();
    Ok(LineFit { slope, intercept, rms, points: xs.len() })
}

fn logs(values: &[f64], what: &str) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&v| {
            if v > 0.0 && v.is_finite() {
                Ok(v.log10())
            } else {
                Err(Error::Precondition(format!("{what} value {v} has no logarithm")))
            }
        })
        .collect()
}

/// Power-law exponent of `y ~ x^s` from a log10-log10 fit over a continuous variable.
///
/// Requires at least eight samples per decade of `x`.
pub fn power_law_fit(series: &str, xs: &[f64], ys: &[f64], target: f64, tolerance: f64) -> Result<SlopeFit> {
    let lx = logs(xs, "abscissa")?;
    let ly = logs(ys, "ordinate")?;
    let span = lx.iter().copied().fold(f64::NEG_INFINITY, f64::max) - lx.iter().copied().fold(f64::INFINITY, f64::min);
    let density = (lx.len() as f64 - 1.0) / span;
    if !(density >= MIN_POINTS_PER_DECADE) {
        return Err(Error::Precondition(format!(
            "{series}: {density:.1} samples per decade, need {MIN_POINTS_PER_DECADE}"
        )));
    }
    let fit = fit_line(&lx, &ly)?;
    Ok(judge(series, fit, target, Some(tolerance)))
}

/// Exponent `s` of `y ~ 2^{s i}` over integer scale indices `i`; residual reported in log10 units.
pub fn dyadic_fit(series: &str, indices: &[f64], ys: &[f64], target: f64, tolerance: Option<f64>) -> Result<SlopeFit> {
    let ly = logs(ys, "ordinate")?;
    let l2: Vec<f64> = ly.iter().map(|v| v / std::f64::consts::LOG10_2).collect();
    let mut fit = fit_line(indices, &l2)?;
    fit.rms *= std::f64::consts::LOG10_2;
    Ok(judge(series, fit, target, tolerance))
}

fn judge(series: &str, fit: LineFit, target: f64, tolerance: Option<f64>) -> SlopeFit {
    let within = tolerance.is_none_or(|tol| (fit.slope - target).abs() <= tol);
    SlopeFit {
        series: series.to_string(),
        slope: fit.slope,
        target,
        tolerance,
        residual: fit.rms,
        points: fit.points,
        passed: within && fit.rms < RESIDUAL_LIMIT,
    }
}
