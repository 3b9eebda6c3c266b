use num_complex::Complex64;

use super::ComplexValue;
use crate::error::{Result, ZetaError};

/// `n^{-s} = exp(−s·ln n)` for real `n > 0`.
///
/// Returns the reciprocal power because every series term in this crate
/// has the form `m^{-s1} n^{-s2} (m+n)^{-s3}`.
pub fn cpow(n: f64, s: ComplexValue) -> Result<ComplexValue> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(ZetaError::domain("cpow", format!("base must be positive and finite, got {n}")));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(ZetaError::domain("cpow", format!("exponent must be finite, got {s}")));
    }
    // powf keeps the modulus within an ulp where exp(−σ·ln n) would not
    let modulus = n.powf(-s.re);
    let (sin, cos) = (-s.im * n.ln()).sin_cos();
    super::ensure_finite(Complex64::new(modulus * cos, modulus * sin), "cpow")
}

/// `exp(−s·ln_n)` from a precomputed logarithm. No validation.
#[inline]
pub(crate) fn pow_neg_ln(ln_n: f64, s: Complex64) -> Complex64 {
    let modulus = (-s.re * ln_n).exp();
    let (sin, cos) = (-s.im * ln_n).sin_cos();
    Complex64::new(modulus * cos, modulus * sin)
}

/// `[0, 1^{-s}, 2^{-s}, …, upto^{-s}]` (index 0 is unused and set to zero).
pub(crate) fn neg_power_table(s: Complex64, upto: usize) -> Vec<Complex64> {
    let mut table = Vec::with_capacity(upto + 1);
    table.push(Complex64::new(0.0, 0.0));
    for k in 1..=upto {
        table.push(pow_neg_ln((k as f64).ln(), s));
    }
    table
}

/// Real counterpart of [`neg_power_table`] for real exponents.
pub(crate) fn neg_power_table_real(sigma: f64, upto: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(upto + 1);
    table.push(0.0);
    for k in 1..=upto {
        table.push((-sigma * (k as f64).ln()).exp());
    }
    table
}
