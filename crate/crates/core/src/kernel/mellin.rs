//! Contour-integral check of `(1+λ)^{-s} = (1/2πi)∫_{(c)} Γ(s+z)Γ(−z)/Γ(s) λ^z dz`.
//!
//! Not used for production evaluation; it exercises the quadrature and
//! log-gamma machinery on an integrand whose value is known in closed form.

use num_complex::Complex64;

use super::gamma::log_gamma;
use super::quadrature::QuadratureSpec;
use super::ComplexValue;
use crate::approx::ApproxValue;
use crate::error::{Result, ZetaError};

/// Value of the contour integral on `Re z = c`.
pub fn mellin_barnes_binomial(s: ComplexValue, lambda: f64, c: f64, quad: &QuadratureSpec) -> Result<ComplexValue> {
    mellin_barnes_binomial_approx(s, lambda, c, quad).map(|a| a.value)
}

/// Same as [`mellin_barnes_binomial`] with the truncation and panel-doubling
/// estimates attached.
pub fn mellin_barnes_binomial_approx(
    s: ComplexValue,
    lambda: f64,
    c: f64,
    quad: &QuadratureSpec,
) -> Result<ApproxValue> {
    if !super::is_finite(s) || !(s.re > 0.0) {
        return Err(ZetaError::domain("mellin_barnes_binomial", "Re(s) > 0 required"));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(ZetaError::domain("mellin_barnes_binomial", "λ > 0 required"));
    }
    if !(c < 0.0 && c > -s.re) {
        return Err(ZetaError::domain("mellin_barnes_binomial", format!("−Re(s) < c < 0 required, got c = {c}")));
    }
    let ln_gamma_s = log_gamma(s)?;
    let ln_lambda = lambda.ln();
    let integrand = |y: f64| -> Result<Complex64> {
        let z = Complex64::new(c, y);
        let log = log_gamma(s + z)? + log_gamma(-z)? - ln_gamma_s + z * ln_lambda;
        Ok(log.exp() / (2.0 * std::f64::consts::PI))
    };

    let floor = quad.abs_tol() / 20.0;
    let mut h = 8.0 + s.im.abs();
    loop {
        let edge = [h, -h, 1.2 * h, -1.2 * h]
            .iter()
            .map(|&y| integrand(y).map(|v| v.norm()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        if edge < floor {
            break;
        }
        h *= 1.25;
        if h > 1e5 {
            return Err(ZetaError::Quadrature("contour truncation height exceeded 1e5".into()));
        }
    }
    // beyond H the integrand decays at least like e^{-π|y|/2}·poly, so the
    // discarded mass is below 2·|f(H)|·(2/π)·small factor
    let discarded = 2.0 * floor;

    let rate = ln_lambda.abs() + 2.0 * (2.0 + h + s.im.abs()).ln() + 1.0;
    let width = quad.rule().phase_per_panel(quad.nodes_per_panel()) / rate;
    let panels = quad.panels().max((2.0 * h / width).ceil() as usize);
    quad.check_budget(2 * panels)?;
    let rule = quad.panel_rule();

    let mut failure = None;
    let mut eval = |y: f64| match integrand(y) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let (coarse, _) = rule.integrate_panels(-h, h, panels, &mut eval);
    let (fine, abs) = rule.integrate_panels(-h, h, 2 * panels, &mut eval);
    if let Some(e) = failure {
        return Err(e);
    }
    let value = super::ensure_finite(fine, "mellin_barnes_binomial")?;
    ApproxValue::heuristic(value, (fine - coarse).norm() + discarded + 16.0 * f64::EPSILON * abs)
}
