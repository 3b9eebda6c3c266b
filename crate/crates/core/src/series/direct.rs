//! Direct summation of ζ_AV and ζ_MT with rigorous tail majorants.

use num_complex::Complex64;

use super::majorant::{self, Majorant};
use super::{SeriesEvaluation, SeriesOptions, Truncation, ZetaArgs};
use crate::approx::{ApproxValue, Rigor};
use crate::error::{Result, ZetaError};
use crate::kernel::power::{neg_power_table, neg_power_table_real};
use crate::summation::{blocked_sum, blocked_sum_real, dot, dot_real};

pub(crate) fn check_av_region(args: &ZetaArgs) -> Result<()> {
    let a = args.sigma1() + args.sigma3();
    if !(a > 1.0) {
        return Err(ZetaError::region(format!("σ1 + σ3 > 1 (got {a})")));
    }
    let b = args.sigma_sum();
    if !(b > 2.0) {
        return Err(ZetaError::region(format!("σ1 + σ2 + σ3 > 2 (got {b})")));
    }
    Ok(())
}

pub(crate) fn check_mt_region(args: &ZetaArgs) -> Result<()> {
    let a = args.sigma1() + args.sigma3();
    if !(a > 1.0) {
        return Err(ZetaError::region(format!("σ1 + σ3 > 1 (got {a})")));
    }
    let b = args.sigma2() + args.sigma3();
    if !(b > 1.0) {
        return Err(ZetaError::region(format!("σ2 + σ3 > 1 (got {b})")));
    }
    let c = args.sigma_sum();
    if !(c > 2.0) {
        return Err(ZetaError::region(format!("σ1 + σ2 + σ3 > 2 (got {c})")));
    }
    Ok(())
}

/// `Σ_{m=2}^{L} pm[m] Σ_{n<m} pn[n]·pk[m+n]`; tables indexed from 1.
pub(crate) fn av_triangle_sum(pm: &[Complex64], pn: &[Complex64], pk: &[Complex64], last: usize) -> Complex64 {
    debug_assert!(pm.len() > last && pn.len() >= last && pk.len() > 2 * last - 1);
    blocked_sum(2, last + 1, |m| pm[m] * dot(&pn[1..m], &pk[m + 1..2 * m]))
}

fn av_triangle_sum_real(pm: &[f64], pn: &[f64], pk: &[f64], last: usize) -> f64 {
    blocked_sum_real(2, last + 1, |m| pm[m] * dot_real(&pn[1..m], &pk[m + 1..2 * m]))
}

/// `Σ_{m=1}^{L} Σ_{n=1}^{L} pm[m]·pn[n]·pk[m+n]`.
pub(crate) fn mt_square_sum(pm: &[Complex64], pn: &[Complex64], pk: &[Complex64], last: usize) -> Complex64 {
    debug_assert!(pm.len() > last && pn.len() > last && pk.len() > 2 * last);
    blocked_sum(1, last + 1, |m| pm[m] * dot(&pn[1..=last], &pk[m + 1..=m + last]))
}

fn mt_square_sum_real(pm: &[f64], pn: &[f64], pk: &[f64], last: usize) -> f64 {
    blocked_sum_real(1, last + 1, |m| pm[m] * dot_real(&pn[1..=last], &pk[m + 1..=m + last]))
}

/// Plain partial sum `Σ_{m ≤ M} Σ_{n<m}` (no region check, no bound).
pub fn av2_truncated(args: &ZetaArgs, cutoff: usize) -> Result<Complex64> {
    let value = if cutoff < 2 {
        Complex64::new(0.0, 0.0)
    } else if args.is_real() {
        let pm = neg_power_table_real(args.sigma1(), cutoff);
        let pn = neg_power_table_real(args.sigma2(), cutoff);
        let pk = neg_power_table_real(args.sigma3(), 2 * cutoff);
        Complex64::new(av_triangle_sum_real(&pm, &pn, &pk, cutoff), 0.0)
    } else {
        let pm = neg_power_table(args.s1(), cutoff);
        let pn = neg_power_table(args.s2(), cutoff);
        let pk = neg_power_table(args.s3(), 2 * cutoff);
        av_triangle_sum(&pm, &pn, &pk, cutoff)
    };
    crate::kernel::ensure_finite(value, "av2_truncated")
}

/// Plain partial sum `Σ_{m ≤ M} Σ_{n ≤ M}` (no region check, no bound).
pub fn mt2_truncated(args: &ZetaArgs, cutoff: usize) -> Result<Complex64> {
    let value = if cutoff < 1 {
        Complex64::new(0.0, 0.0)
    } else if args.is_real() {
        let pm = neg_power_table_real(args.sigma1(), cutoff);
        let pn = neg_power_table_real(args.sigma2(), cutoff);
        let pk = neg_power_table_real(args.sigma3(), 2 * cutoff);
        Complex64::new(mt_square_sum_real(&pm, &pn, &pk, cutoff), 0.0)
    } else {
        let pm = neg_power_table(args.s1(), cutoff);
        let pn = neg_power_table(args.s2(), cutoff);
        let pk = neg_power_table(args.s3(), 2 * cutoff);
        mt_square_sum(&pm, &pn, &pk, cutoff)
    };
    crate::kernel::ensure_finite(value, "mt2_truncated")
}

/// Relative rounding error per term times the number of naive additions
/// inside one chunk, as a multiple of machine epsilon.
fn rounding_factor(args: &ZetaArgs, cutoff: usize) -> f64 {
    f64::EPSILON * (80.0 + args.abs_sum() * (2.0 * cutoff.max(2) as f64).ln())
}

fn evaluate(
    args: &ZetaArgs,
    eps: f64,
    majorant: &Majorant,
    opts: &SeriesOptions,
    sum: fn(&ZetaArgs, usize) -> Result<Complex64>,
) -> Result<SeriesEvaluation> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(ZetaError::domain("direct series", format!("eps > 0 required, got {eps}")));
    }
    // Σ|terms| over the whole series bounds the accumulated rounding error
    let abs_total = majorant.total();
    let rounding_cap = rounding_factor(args, opts.max_outer) * abs_total;
    let target = if rounding_cap < eps / 2.0 { eps - rounding_cap } else { eps / 2.0 };
    let (cutoff, clamped) = majorant.cutoff(target, 2, opts.max_outer);
    let value = sum(args, cutoff)?;
    let bound = majorant.tail(cutoff) + rounding_factor(args, cutoff) * abs_total;
    let rigor = if clamped { Rigor::Heuristic } else { Rigor::Rigorous };
    Ok(SeriesEvaluation {
        value: ApproxValue::new(value, bound, rigor)?,
        truncation: Truncation::new(cutoff, eps)?,
        clamped,
    })
}

/// `ζ_AV(s1, s2, s3)` by direct summation, with the outer index cut where the
/// tail majorant drops below `eps`.
pub fn av2_direct(args: &ZetaArgs, eps: f64) -> Result<ApproxValue> {
    av2_direct_with(args, eps, &SeriesOptions::default()).map(|e| e.value)
}

pub fn av2_direct_with(args: &ZetaArgs, eps: f64, opts: &SeriesOptions) -> Result<SeriesEvaluation> {
    check_av_region(args)?;
    let maj = majorant::av_row(args.sigma1(), args.sigma2(), args.sigma3())?;
    evaluate(args, eps, &maj, opts, av2_truncated)
}

/// `ζ_MT(s1, s2, s3)` by direct summation over the square `m, n ≤ M`.
pub fn mt2_direct(args: &ZetaArgs, eps: f64) -> Result<ApproxValue> {
    mt2_direct_with(args, eps, &SeriesOptions::default()).map(|e| e.value)
}

pub fn mt2_direct_with(args: &ZetaArgs, eps: f64, opts: &SeriesOptions) -> Result<SeriesEvaluation> {
    check_mt_region(args)?;
    let maj = majorant::mt_shell(args.sigma1(), args.sigma2(), args.sigma3())?;
    evaluate(args, eps, &maj, opts, mt2_truncated)
}
