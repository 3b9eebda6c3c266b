//! Least-squares fits of residual growth exponents.

use serde::{Deserialize, Serialize};

use super::mean_square::MeanSquareReport;
use crate::error::{Result, ZetaError};

/// Residuals smaller than this fraction of `ζ^[2]` are left out of fits.
pub const DROP_FRACTION: f64 = 1e-3;

/// Result of regressing `ln|R(T)| − β ln ln T` on `ln T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub exponent: f64,
    /// Standard error of the slope; absent when only two points were fitted.
    pub stderr: Option<f64>,
    pub used: usize,
    pub dropped: usize,
}

/// Ordinary least squares of `ln|r| − β·ln ln t` against `ln t`.
pub fn fit_power_law(samples: &[(f64, f64)], log_exponent: f64) -> Result<ExponentFit> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(t, r)| (t.ln(), r.abs().ln() - log_exponent * t.ln().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(ZetaError::InsufficientData(format!("{} usable samples, at least 2 needed", pts.len())));
    }
    if pts.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(ZetaError::InsufficientData("zero residual or T ≤ 1 in fit".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(ZetaError::InsufficientData("all samples at the same T".into()));
    }
    let slope = sxy / sxx;
    let stderr = (pts.len() > 2).then(|| {
        let sse: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
        (sse / (n - 2.0) / sxx).sqrt()
    });
    Ok(ExponentFit { exponent: slope, stderr, used: pts.len(), dropped: 0 })
}

/// Growth exponent of `R(T) = I(T) − ζ^[2]·T` from a mean-square report.
///
/// Uses the upper half of the samples (at least three), drops residuals
/// below `10⁻³·ζ^[2]`, and removes the regime's predicted log factor.
pub fn residual_exponent_fit(report: &MeanSquareReport) -> Result<ExponentFit> {
    let n = report.i_values.len();
    if n < 4 {
        return Err(ZetaError::InsufficientData(format!("{n} T samples, at least 4 needed")));
    }
    let keep = n.div_ceil(2).max(3);
    let threshold = DROP_FRACTION * report.zeta_sq_ref.abs();
    let mut used = Vec::with_capacity(keep);
    let mut dropped = 0;
    for (i, &(t, _)) in report.i_values.iter().enumerate().skip(n - keep) {
        let r = report.residuals[i];
        if r.abs() < threshold || r == 0.0 {
            dropped += 1;
        } else {
            used.push((t, r));
        }
    }
    let mut fit = fit_power_law(&used, report.regime.log_exponent())?;
    fit.dropped = dropped;
    Ok(fit)
}
