//! The second approximation formula (a plain truncation at `m ≤ a·t3`) and
//! its Mordell–Tornheim counterpart (the square `m, n ≤ b·t3`).

use num_complex::Complex64;

use super::{guard_hyperplane, require};
use crate::approx::ApproxValue;
use crate::constants::Constants;
use crate::error::{Result, ZetaError};
use crate::kernel::power::neg_power_table;
use crate::series::{av_triangle_sum, mt_square_sum, ZetaArgs};

const LOG_CASE_TOL: f64 = 1e-12;

fn check_t3(args: &ZetaArgs, op: &'static str) -> Result<()> {
    if !(args.t3() >= 2.0) {
        return Err(ZetaError::domain(op, format!("t3 ≥ 2 required (t3 = {})", args.t3())));
    }
    Ok(())
}

/// Preconditions of the second approximation formula at `args`.
pub fn check_second_approx(args: &ZetaArgs) -> Result<()> {
    let (s1, s2, s3) = (args.sigma1(), args.sigma2(), args.sigma3());
    require(s1 >= 0.0, || format!("σ1 ≥ 0 (σ1 = {s1})"))?;
    require(args.t1() >= 0.0, || format!("t1 ≥ 0 (t1 = {})", args.t1()))?;
    check_t3(args, "av2_approx_second")?;
    require(s3 > 0.0, || format!("σ3 > 0 (σ3 = {s3})"))?;
    require(s3 > 0.5 - s1, || format!("σ3 > 1/2 − σ1 (σ1 + σ3 = {})", s1 + s3))?;
    require(s3 > 1.5 - s1 - s2, || format!("σ3 > 3/2 − σ1 − σ2 (σ1 + σ2 + σ3 = {})", s1 + s2 + s3))?;
    guard_hyperplane("s1 + s3 = 1", args.s1() + args.s3() - 1.0)?;
    guard_hyperplane("s1 + s2 + s3 = 2", args.sum() - 2.0)?;
    Ok(())
}

/// `⌊a·t3⌋` with `a = max(1, |t1|)`.
pub fn second_approx_cutoff(args: &ZetaArgs) -> usize {
    (args.t1().abs().max(1.0) * args.t3()).floor() as usize
}

/// The O-term shape at `t3`: `t3^{1/2−σ1−σ3}` for σ2 > 3/2, times `log t3`
/// at σ2 = 3/2, and `t3^{3/2−σ1−σ2−σ3}` for σ2 < 3/2.
pub fn second_approx_shape(args: &ZetaArgs) -> f64 {
    let t = args.t3();
    let (s1, s2, s3) = (args.sigma1(), args.sigma2(), args.sigma3());
    if (s2 - 1.5).abs() <= LOG_CASE_TOL {
        t.powf(0.5 - s1 - s3) * t.ln()
    } else if s2 > 1.5 {
        t.powf(0.5 - s1 - s3)
    } else {
        t.powf(1.5 - s1 - s2 - s3)
    }
}

fn rounding(args: &ZetaArgs, cutoff: usize) -> f64 {
    // Σ|terms| ≤ (L²/2)·max|term|
    let l = cutoff as f64;
    let worst = |sigma: f64, hi: f64| if sigma >= 0.0 { 1.0 } else { hi.powf(-sigma) };
    let max_term = worst(args.sigma1(), l) * worst(args.sigma2(), l) * worst(args.sigma3(), 2.0 * l).max(2f64.powf(-args.sigma3()));
    f64::EPSILON * (80.0 + args.abs_sum() * (2.0 * l).ln()) * 0.5 * l * l * max_term
}

/// `Σ_{m ≤ a·t3} Σ_{n<m} m^{-s1} n^{-s2} (m+n)^{-s3}` with a heuristic bound.
pub fn av2_approx_second(args: &ZetaArgs) -> Result<ApproxValue> {
    av2_approx_second_with(args, &Constants::builtin())
}

pub fn av2_approx_second_with(args: &ZetaArgs, constants: &Constants) -> Result<ApproxValue> {
    check_second_approx(args)?;
    let cutoff = second_approx_cutoff(args);
    let value = triangle(args, cutoff);
    ApproxValue::heuristic(
        crate::kernel::ensure_finite(value, "av2_approx_second")?,
        constants.second_approx * second_approx_shape(args) + rounding(args, cutoff),
    )
}

pub(crate) fn triangle(args: &ZetaArgs, cutoff: usize) -> Complex64 {
    if cutoff < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let pm = neg_power_table(args.s1(), cutoff);
    let pn = neg_power_table(args.s2(), cutoff);
    let pk = neg_power_table(args.s3(), 2 * cutoff);
    av_triangle_sum(&pm, &pn, &pk, cutoff)
}

pub(crate) fn square(args: &ZetaArgs, cutoff: usize) -> Complex64 {
    if cutoff < 1 {
        return Complex64::new(0.0, 0.0);
    }
    let pm = neg_power_table(args.s1(), cutoff);
    let pn = neg_power_table(args.s2(), cutoff);
    let pk = neg_power_table(args.s3(), 2 * cutoff);
    mt_square_sum(&pm, &pn, &pk, cutoff)
}

/// Preconditions of the Mordell–Tornheim approximation at `args`.
pub fn check_mt_approx(args: &ZetaArgs) -> Result<()> {
    let (s1, s2, s3) = (args.sigma1(), args.sigma2(), args.sigma3());
    require(s1 >= 0.0, || format!("σ1 ≥ 0 (σ1 = {s1})"))?;
    require(s2 >= 0.0, || format!("σ2 ≥ 0 (σ2 = {s2})"))?;
    require(args.t1() >= 0.0, || format!("t1 ≥ 0 (t1 = {})", args.t1()))?;
    require(args.t2() >= 0.0, || format!("t2 ≥ 0 (t2 = {})", args.t2()))?;
    check_t3(args, "mt2_approx")?;
    require(s3 > 0.0, || format!("σ3 > 0 (σ3 = {s3})"))?;
    require(s3 > 0.5 - s1, || format!("σ3 > 1/2 − σ1 (σ1 + σ3 = {})", s1 + s3))?;
    require(s3 > 0.5 - s2, || format!("σ3 > 1/2 − σ2 (σ2 + σ3 = {})", s2 + s3))?;
    require(s3 > 1.5 - s1 - s2, || format!("σ3 > 3/2 − σ1 − σ2 (σ1 + σ2 + σ3 = {})", s1 + s2 + s3))?;
    guard_hyperplane("s1 + s3 = 1", args.s1() + args.s3() - 1.0)?;
    guard_hyperplane("s2 + s3 = 1", args.s2() + args.s3() - 1.0)?;
    guard_hyperplane("s1 + s2 + s3 = 2", args.sum() - 2.0)?;
    Ok(())
}

/// `⌊b·t3⌋` with `b = max(1, |t1|, |t2|)`.
pub fn mt_approx_cutoff(args: &ZetaArgs) -> usize {
    (args.t1().abs().max(args.t2().abs()).max(1.0) * args.t3()).floor() as usize
}

/// The O-term shape: `t3^{-min(σ1+σ3, σ2+σ3)}` when max(σ1, σ2) > 3/2,
/// times `log t3` when it equals 3/2, else `t3^{3/2−σ1−σ2−σ3}`.
pub fn mt_approx_shape(args: &ZetaArgs) -> f64 {
    let t = args.t3();
    let (s1, s2, s3) = (args.sigma1(), args.sigma2(), args.sigma3());
    let top = s1.max(s2);
    let wide = t.powf(-(s1 + s3).min(s2 + s3));
    if (top - 1.5).abs() <= LOG_CASE_TOL {
        wide * t.ln()
    } else if top > 1.5 {
        wide
    } else {
        t.powf(1.5 - s1 - s2 - s3)
    }
}

/// `Σ_{m ≤ b·t3} Σ_{n ≤ b·t3} m^{-s1} n^{-s2} (m+n)^{-s3}` with a heuristic bound.
pub fn mt2_approx(args: &ZetaArgs) -> Result<ApproxValue> {
    mt2_approx_with(args, &Constants::builtin())
}

pub fn mt2_approx_with(args: &ZetaArgs, constants: &Constants) -> Result<ApproxValue> {
    check_mt_approx(args)?;
    let cutoff = mt_approx_cutoff(args);
    let value = square(args, cutoff);
    ApproxValue::heuristic(
        crate::kernel::ensure_finite(value, "mt2_approx")?,
        constants.mt_approx * mt_approx_shape(args) + 2.0 * rounding(args, cutoff),
    )
}
