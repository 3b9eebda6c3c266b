use num_complex::Complex64;

use super::bernoulli::{bernoulli_even, MAX_EVEN_INDEX};
use super::ComplexValue;
use crate::error::{Result, ZetaError};

const SHIFT_TARGET: f64 = 8.0;
const STIRLING_TERMS: usize = 10;
const _: () = assert!(STIRLING_TERMS <= MAX_EVEN_INDEX);
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of `ln Γ(z)` for `Re z > 0`.
///
/// The argument is shifted up with `ln Γ(z) = ln Γ(z+k) − Σ ln(z+j)` until
/// `Re z ≥ 8`, where a 10-term Stirling series is accurate to ~1e-16.
/// The branch is the analytic continuation of the real `ln Γ` from the
/// positive axis, so `Im` grows without wrapping as `Im z` grows.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !super::is_finite(z) {
        return Err(ZetaError::domain("log_gamma", format!("argument must be finite, got {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(ZetaError::Pole { op: "log_gamma", at: format!("{z}") });
    }
    if z.re <= 0.0 {
        return Err(ZetaError::domain("log_gamma", "Re(z) > 0 required (no reflection formula)"));
    }
    let mut w = z;
    let mut pullback = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        // each ln is principal; for Re(w) > 0 the sum stays on the right branch
        pullback += w.ln();
        w += 1.0;
    }
    super::ensure_finite(stirling(w) - pullback, "log_gamma")
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=STIRLING_TERMS {
        let kf = k as f64;
        series += power * (bernoulli_even(k) / (2.0 * kf * (2.0 * kf - 1.0)));
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + series
}
