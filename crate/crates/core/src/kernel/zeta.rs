//! Riemann zeta and Dirichlet power tails via Euler–Maclaurin summation.

use num_complex::Complex64;

use super::bernoulli::{bernoulli_even_over_factorial, MAX_EVEN_INDEX};
use super::power::pow_neg_ln;
use super::ComplexValue;
use crate::approx::ApproxValue;
use crate::error::{Result, ZetaError};
use crate::summation::CompensatedComplex;

/// Largest correction order accepted by [`riemann_zeta_em`].
pub const MAX_CORRECTION_ORDER: usize = MAX_EVEN_INDEX - 1;

/// Euler–Maclaurin estimate of `Σ_{k > n} k^{-s}` with `order` Bernoulli
/// corrections. Returns `(value, remainder bound)`.
///
/// The bound `|T_{p+1}|·|s+2p+1|/(σ+2p+1)` holds whenever `σ+2p+1 > 0`;
/// the caller guarantees that and `s ≠ 1`.
pub(crate) fn power_tail(s: Complex64, n: usize, order: usize) -> (Complex64, f64) {
    debug_assert!(n >= 1 && order <= MAX_CORRECTION_ORDER);
    let ln_n = (n as f64).ln();
    let n_pow = pow_neg_ln(ln_n, s); // n^{-s}
    let inv_n = 1.0 / n as f64;
    let mut value = n_pow * (n as f64) / (s - 1.0) - n_pow * 0.5;
    // (s)_{2j-1} n^{-s-2j+1}, built incrementally
    let mut rising = s;
    let mut power = n_pow * inv_n;
    for j in 1..=order {
        value += rising * power * bernoulli_even_over_factorial(j);
        let a = 2.0 * j as f64 - 1.0;
        rising *= (s + a) * (s + a + 1.0);
        power *= inv_n * inv_n;
    }
    let p = order as f64;
    let omitted = (rising * power).norm() * bernoulli_even_over_factorial(order + 1).abs();
    let bound = omitted * (s + 2.0 * p + 1.0).norm() / (s.re + 2.0 * p + 1.0);
    (value, bound)
}

/// `Σ_{k ≤ n} k^{-s}` with a floating-point rounding allowance.
pub(crate) fn partial_sum(s: Complex64, n: usize) -> (Complex64, f64) {
    let mut acc = CompensatedComplex::new();
    let mut weight = 0.0;
    let abs_s = s.norm();
    for k in 1..=n {
        let l = (k as f64).ln();
        acc.add(pow_neg_ln(l, s));
        weight += (2.0 + abs_s * l) * (-s.re * l).exp();
    }
    (acc.value(), 4.0 * f64::EPSILON * weight)
}

/// `ζ(s)` by Euler–Maclaurin summation with an explicit cutoff.
///
/// ```text
/// ζ(s) = Σ_{n≤N} n^{-s} + N^{1-s}/(s−1) − N^{-s}/2
///        + Σ_{j=1}^{p} B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{-s-2j+1} + R_p
/// ```
///
/// The error bound is the first omitted term scaled by
/// `|s+2p+1|/(σ+2p+1)` plus a rounding allowance. Accurate results need
/// `cutoff ≳ 2(1+|Im s|)`.
pub fn riemann_zeta_em(s: ComplexValue, cutoff: usize, correction_order: usize) -> Result<ApproxValue> {
    check_zeta_args(s)?;
    if s.re <= 0.0 {
        return Err(ZetaError::domain("riemann_zeta_em", "Re(s) > 0 required (reflection not implemented)"));
    }
    if cutoff < 1 {
        return Err(ZetaError::domain("riemann_zeta_em", "cutoff ≥ 1 required"));
    }
    if correction_order > MAX_CORRECTION_ORDER {
        return Err(ZetaError::domain(
            "riemann_zeta_em",
            format!("correction_order ≤ {MAX_CORRECTION_ORDER} required, got {correction_order}"),
        ));
    }
    let (head, rounding) = partial_sum(s, cutoff);
    let (tail, remainder) = power_tail(s, cutoff, correction_order);
    let value = head + tail;
    ApproxValue::rigorous(value, remainder + rounding + 4.0 * f64::EPSILON * tail.norm())
}

/// `ζ(s)` for `Re s > −15`, `s ≠ 1`, with automatically chosen parameters.
///
/// Used internally where zeta values just left of the critical strip are
/// needed (expansion coefficients of the square-series tail model).
pub fn zeta_continued(s: ComplexValue) -> Result<ApproxValue> {
    check_zeta_args(s)?;
    if s.re <= -15.0 {
        return Err(ZetaError::domain("zeta_continued", "Re(s) > −15 required"));
    }
    let order = MAX_CORRECTION_ORDER;
    let cutoff = (s.norm().ceil() as usize + 12).max(2 * (1 + s.im.abs().ceil() as usize)).max(24);
    let (head, rounding) = partial_sum(s, cutoff);
    let (tail, remainder) = power_tail(s, cutoff, order);
    ApproxValue::rigorous(head + tail, remainder + rounding + 4.0 * f64::EPSILON * tail.norm())
}

/// `Σ_{k > n} k^{-s}` for `Re s > 1`.
///
/// Small `n` are handled by summing explicitly up to a safe cutoff before
/// switching to the Euler–Maclaurin tail, so the result never suffers the
/// cancellation of `ζ(s) − Σ_{k≤n}`.
pub fn dirichlet_tail(s: ComplexValue, n: usize) -> Result<ApproxValue> {
    check_zeta_args(s)?;
    if s.re <= 1.0 {
        return Err(ZetaError::domain("dirichlet_tail", "Re(s) > 1 required"));
    }
    let safe = (2.0 * (1.0 + s.im.abs()) + 0.5 * s.norm()).ceil() as usize + 16;
    let start = n.max(safe);
    let order = 8;
    let mut acc = CompensatedComplex::new();
    let mut weight = 0.0;
    let abs_s = s.norm();
    for k in (n + 1)..=start {
        let l = (k as f64).ln();
        acc.add(pow_neg_ln(l, s));
        weight += (2.0 + abs_s * l) * (-s.re * l).exp();
    }
    let (tail, remainder) = power_tail(s, start, order);
    let value = acc.value() + tail;
    ApproxValue::rigorous(value, remainder + 4.0 * f64::EPSILON * (weight + tail.norm()))
}

fn check_zeta_args(s: Complex64) -> Result<()> {
    if !super::is_finite(s) {
        return Err(ZetaError::domain("zeta", format!("argument must be finite, got {s}")));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(ZetaError::Pole { op: "zeta", at: "s = 1".into() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::c64;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        let z2 = riemann_zeta_em(c64(2.0, 0.0), 50, 4).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(z2.error_bound < 1e-12);
        let z6 = riemann_zeta_em(c64(6.0, 0.0), 50, 4).unwrap();
        assert!((z6.value.re - PI.powi(6) / 945.0).abs() < 1e-12);
        assert_eq!(z6.rigor, crate::Rigor::Rigorous);
    }

    #[test]
    fn self_consistency_on_complex_argument() {
        let s = c64(2.0, 3.0);
        let a = riemann_zeta_em(s, 100, 6).unwrap();
        let b = riemann_zeta_em(s, 400, 8).unwrap();
        assert!((a.value - b.value).norm() <= a.error_bound.max(b.error_bound));
    }

    #[test]
    fn critical_strip_and_beyond() {
        // ζ(1/2) = −1.4603545088095868…
        let z = riemann_zeta_em(c64(0.5, 0.0), 40, 8).unwrap();
        assert!((z.value.re + 1.460_354_508_809_586_8).abs() < 1e-13);
        // first nontrivial zero 1/2 + 14.134725141734693i
        let z = riemann_zeta_em(c64(0.5, 14.134_725_141_734_693), 60, 8).unwrap();
        assert!(z.value.norm() < 1e-12);
        // ζ(0) = −1/2, ζ(−1) = −1/12, ζ(−3) = 1/120
        assert!((zeta_continued(c64(0.0, 0.0)).unwrap().value.re + 0.5).abs() < 1e-13);
        assert!((zeta_continued(c64(-1.0, 0.0)).unwrap().value.re + 1.0 / 12.0).abs() < 1e-13);
        let z = zeta_continued(c64(-3.0, 0.0)).unwrap();
        // heavy cancellation between the partial sum and the tail
        assert!((z.value.re - 1.0 / 120.0).abs() <= z.error_bound.min(1e-9), "{z:?}");
        let z = zeta_continued(c64(-2.0, 0.0)).unwrap();
        assert!(z.value.norm() <= z.error_bound.min(1e-10), "{z:?}");
    }

    #[test]
    fn errors() {
        assert!(matches!(riemann_zeta_em(c64(1.0, 0.0), 10, 2), Err(ZetaError::Pole { .. })));
        assert!(matches!(riemann_zeta_em(c64(-0.5, 0.0), 10, 2), Err(ZetaError::Domain { .. })));
        assert!(riemann_zeta_em(c64(2.0, 0.0), 10, 11).is_err());
    }

    #[test]
    fn tail_matches_difference() {
        let s = c64(1.7, 6.0);
        let z = riemann_zeta_em(s, 200, 8).unwrap();
        for n in [1usize, 5, 30, 500] {
            let t = dirichlet_tail(s, n).unwrap();
            let (head, _) = partial_sum(s, n);
            assert!((head + t.value - z.value).norm() < 1e-13, "n = {n}");
            assert!(t.error_bound < 1e-13);
        }
    }
}
