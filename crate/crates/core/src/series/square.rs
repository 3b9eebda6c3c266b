//! Square series `Σ_k |inner(k)|² k^{-σ}`, the leading mean-square coefficients.

use num_complex::Complex64;
use rayon::prelude::*;

use super::majorant;
use super::square_model::InnerModel;
use super::{SeriesEvaluation, SeriesOptions, Truncation};
use crate::approx::ApproxValue;
use crate::error::{Result, ZetaError};
use crate::kernel::power::{neg_power_table, neg_power_table_real};
use crate::kernel::ComplexValue;
use crate::summation::{dot, dot_real, CompensatedSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// `k/2 < m ≤ k−1`
    Half,
    /// `1 ≤ m ≤ k−1`
    Full,
}

fn check_finite(s1: ComplexValue, s2: ComplexValue, sigma: f64) -> Result<()> {
    if !(s1.re.is_finite() && s1.im.is_finite() && s2.re.is_finite() && s2.im.is_finite() && sigma.is_finite()) {
        return Err(ZetaError::domain("square series", "arguments must be finite"));
    }
    Ok(())
}

pub(crate) fn check_av_sq_region(s1: ComplexValue, s2: ComplexValue, sigma: f64) -> Result<()> {
    check_finite(s1, s2, sigma)?;
    let a = 2.0 * s1.re + sigma;
    if !(a > 1.0) {
        return Err(ZetaError::region(format!("2σ1 + σ > 1 (got {a})")));
    }
    let b = 2.0 * s1.re + 2.0 * s2.re + sigma;
    if !(b > 3.0) {
        return Err(ZetaError::region(format!("2σ1 + 2σ2 + σ > 3 (got {b})")));
    }
    Ok(())
}

pub(crate) fn check_mt_sq_region(s1: ComplexValue, s2: ComplexValue, sigma: f64) -> Result<()> {
    check_finite(s1, s2, sigma)?;
    let a = 2.0 * s1.re + sigma;
    if !(a > 1.0) {
        return Err(ZetaError::region(format!("2σ1 + σ > 1 (got {a})")));
    }
    let b = 2.0 * s2.re + sigma;
    if !(b > 1.0) {
        return Err(ZetaError::region(format!("2σ2 + σ > 1 (got {b})")));
    }
    // the inner sum grows like k^{1−σ1−σ2}, so the square series needs > 3
    let c = 2.0 * s1.re + 2.0 * s2.re + sigma;
    if !(c > 3.0) {
        return Err(ZetaError::region(format!("2σ1 + 2σ2 + σ > 3 (got {c})")));
    }
    Ok(())
}

/// Inner sums `S(k)` for `k = 0..=K` (entries 0 and 1 are zero).
fn inner_sums(kind: Kind, s1: ComplexValue, s2: ComplexValue, cutoff: usize) -> Vec<Complex64> {
    let span = |k: usize| match kind {
        Kind::Half => (k.saturating_sub(1)) / 2,
        Kind::Full => k.saturating_sub(1),
    };
    if s1.im == 0.0 && s2.im == 0.0 {
        let pm = neg_power_table_real(s1.re, cutoff);
        let pj = neg_power_table_real(s2.re, cutoff);
        // rev[K − k + j] = pm[k − j]
        let rev: Vec<f64> = (0..=cutoff).map(|i| pm[cutoff - i]).collect();
        (0..=cutoff)
            .into_par_iter()
            .map(|k| {
                let j = span(k);
                if j == 0 {
                    return Complex64::new(0.0, 0.0);
                }
                let off = cutoff - k;
                Complex64::new(dot_real(&pj[1..=j], &rev[off + 1..=off + j]), 0.0)
            })
            .collect()
    } else {
        let pm = neg_power_table(s1, cutoff);
        let pj = neg_power_table(s2, cutoff);
        let rev: Vec<Complex64> = (0..=cutoff).map(|i| pm[cutoff - i]).collect();
        (0..=cutoff)
            .into_par_iter()
            .map(|k| {
                let j = span(k);
                if j == 0 {
                    return Complex64::new(0.0, 0.0);
                }
                let off = cutoff - k;
                dot(&pj[1..=j], &rev[off + 1..=off + j])
            })
            .collect()
    }
}

fn square_sum(inner: &[Complex64], sigma: f64, cutoff: usize) -> f64 {
    let mut acc = CompensatedSum::new();
    for (k, s) in inner.iter().enumerate().take(cutoff + 1).skip(2) {
        acc.add(s.norm_sqr() * (k as f64).powf(-sigma));
    }
    acc.value()
}

fn truncated(kind: Kind, s1: ComplexValue, s2: ComplexValue, sigma: f64, cutoff: usize) -> Result<f64> {
    check_finite(s1, s2, sigma)?;
    if cutoff < 2 {
        return Ok(0.0);
    }
    let v = square_sum(&inner_sums(kind, s1, s2, cutoff), sigma, cutoff);
    if !v.is_finite() {
        return Err(ZetaError::NonFinite("square series".into()));
    }
    Ok(v)
}

/// `Σ_{k≤K} |Σ_{k/2<m≤k−1} m^{-s1}(k−m)^{-s2}|² k^{-σ}` (no region check).
pub fn av2_sq_truncated(s1: ComplexValue, s2: ComplexValue, sigma: f64, cutoff: usize) -> Result<f64> {
    truncated(Kind::Half, s1, s2, sigma, cutoff)
}

/// `Σ_{k≤K} |Σ_{m=1}^{k−1} m^{-s1}(k−m)^{-s2}|² k^{-σ}` (no region check).
pub fn mt2_sq_truncated(s1: ComplexValue, s2: ComplexValue, sigma: f64, cutoff: usize) -> Result<f64> {
    truncated(Kind::Full, s1, s2, sigma, cutoff)
}

fn evaluate(
    kind: Kind,
    s1: ComplexValue,
    s2: ComplexValue,
    sigma: f64,
    eps: f64,
    opts: &SeriesOptions,
) -> Result<SeriesEvaluation> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(ZetaError::domain("square series", format!("eps > 0 required, got {eps}")));
    }
    let maj = match kind {
        Kind::Half => majorant::av_square_row(s1.re, s2.re, sigma)?,
        Kind::Full => majorant::mt_square_row(s1.re, s2.re, sigma)?,
    };
    let abs_total = maj.total();
    let rounding = |k: usize| 2.0 * f64::EPSILON * (80.0 + (s1.norm() + s2.norm()) * (k.max(2) as f64).ln()) * abs_total;
    let cap_rounding = rounding(opts.max_square);
    let target = if cap_rounding < eps / 2.0 { eps - cap_rounding } else { eps / 2.0 };
    let (cutoff, clamped) = maj.cutoff(target, 2, opts.max_square);
    let inner = inner_sums(kind, s1, s2, cutoff);
    let head = square_sum(&inner, sigma, cutoff);
    if !head.is_finite() {
        return Err(ZetaError::NonFinite("square series".into()));
    }
    let truncation = Truncation::new(cutoff, eps)?;
    if !clamped {
        let value = ApproxValue::rigorous(Complex64::new(head, 0.0), maj.tail(cutoff) + rounding(cutoff))?;
        return Ok(SeriesEvaluation { value, truncation, clamped });
    }
    let model = match kind {
        Kind::Half => InnerModel::apostol_vu(s1, s2)?,
        Kind::Full => InnerModel::mordell_tornheim(s1, s2)?,
    };
    let first = cutoff / 2;
    let estimate = model.and_then(|m| m.tail_estimate(sigma, &inner[first..=cutoff], first));
    let value = match estimate {
        Some(t) => ApproxValue::heuristic(Complex64::new(head + t.value, 0.0), t.error + rounding(cutoff))?,
        None => ApproxValue::heuristic(Complex64::new(head, 0.0), maj.tail(cutoff) + rounding(cutoff))?,
    };
    Ok(SeriesEvaluation { value, truncation, clamped })
}

/// `ζ^[2]_AV(s1, s2, σ)`; the result is real and non-negative.
///
/// When the rigorous cutoff exceeds `max_square`, the remaining tail is
/// estimated from an asymptotic model of the inner sums and the result is
/// flagged heuristic.
pub fn av2_sq(s1: ComplexValue, s2: ComplexValue, sigma: f64, eps: f64) -> Result<ApproxValue> {
    av2_sq_with(s1, s2, sigma, eps, &SeriesOptions::default()).map(|e| e.value)
}

pub fn av2_sq_with(
    s1: ComplexValue,
    s2: ComplexValue,
    sigma: f64,
    eps: f64,
    opts: &SeriesOptions,
) -> Result<SeriesEvaluation> {
    check_av_sq_region(s1, s2, sigma)?;
    evaluate(Kind::Half, s1, s2, sigma, eps, opts)
}

/// `ζ^[2]_MT(s1, s2, σ)`; the result is real and non-negative.
pub fn mt2_sq(s1: ComplexValue, s2: ComplexValue, sigma: f64, eps: f64) -> Result<ApproxValue> {
    mt2_sq_with(s1, s2, sigma, eps, &SeriesOptions::default()).map(|e| e.value)
}

pub fn mt2_sq_with(
    s1: ComplexValue,
    s2: ComplexValue,
    sigma: f64,
    eps: f64,
    opts: &SeriesOptions,
) -> Result<SeriesEvaluation> {
    check_mt_sq_region(s1, s2, sigma)?;
    evaluate(Kind::Full, s1, s2, sigma, eps, opts)
}
