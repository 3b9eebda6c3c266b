//! Complex-analytic primitives shared by every evaluator.

pub mod bernoulli;
pub mod gamma;
pub mod mellin;
pub mod power;
pub mod quadrature;
pub mod tail;
pub mod zeta;

use num_complex::Complex64;

/// A point `σ + it` of the complex plane.
pub type ComplexValue = Complex64;

pub use gamma::log_gamma;
pub use mellin::{mellin_barnes_binomial, mellin_barnes_binomial_approx};
pub use power::cpow;
pub use quadrature::{PanelRule, QuadratureRule, QuadratureSpec};
pub use tail::{tail_integral, tail_integral_mapped, TailMap};
pub use zeta::{dirichlet_tail, riemann_zeta_em, zeta_continued};

use crate::error::{Result, ZetaError};

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> ComplexValue {
    Complex64::new(re, im)
}

pub(crate) fn ensure_finite(z: ComplexValue, context: &str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(ZetaError::NonFinite(context.to_string()))
    }
}

pub(crate) fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
