//! ζ_AV and ζ_MT beyond absolute convergence via approximation formulas,
//! and the functional relation tying them together.

mod first;
mod relation;
mod second;

pub use first::{av2_approx_first, av2_approx_first_with, FirstApproxParams};
pub use relation::{functional_relation_residual, relation_check, RelationCheck, Route};
pub use second::{
    av2_approx_second, av2_approx_second_with, check_mt_approx, check_second_approx, mt2_approx, mt2_approx_with,
    mt_approx_cutoff, mt_approx_shape, second_approx_cutoff, second_approx_shape,
};

use num_complex::Complex64;

use crate::error::{Result, ZetaError};

/// Points closer than this to a singular hyperplane are rejected.
pub const HYPERPLANE_TOL: f64 = 1e-9;

pub(crate) fn guard_hyperplane(hyperplane: &'static str, offset: Complex64) -> Result<()> {
    let distance = offset.norm();
    if distance < HYPERPLANE_TOL {
        return Err(ZetaError::SingularHyperplane { hyperplane, distance });
    }
    Ok(())
}

pub(crate) fn require(holds: bool, violated: impl FnOnce() -> String) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(ZetaError::precondition(violated()))
    }
}
