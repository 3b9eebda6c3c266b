//! `ζ_MT(s1,s2,s3) = 2^{-s3} ζ(s1+s2+s3) + ζ_AV(s1,s2,s3) + ζ_AV(s2,s1,s3)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::second::{av2_approx_second, mt2_approx};
use crate::approx::{ApproxValue, Rigor};
use crate::error::{Result, ZetaError};
use crate::kernel::power::pow_neg_ln;
use crate::kernel::{riemann_zeta_em, zeta_continued};
use crate::series::{av2_accelerated, av2_direct, mt2_accelerated, mt2_direct, AcceleratedParams, ZetaArgs};

/// How the three double-zeta values in the relation are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Truncated series with majorant cutoffs.
    Direct,
    /// Euler–Maclaurin accelerated series.
    Accelerated,
    /// Second approximation formula and its Mordell–Tornheim counterpart.
    Approx,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Accelerated => "accelerated",
            Route::Approx => "approx",
        }
    }
}

/// Residual `LHS − RHS` with the sum of the constituent budgets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub residual: Complex64,
    pub budget: f64,
    pub rigor: Rigor,
    /// `ζ_MT`, `2^{-s3}ζ(s1+s2+s3)`, `ζ_AV(s1,s2,s3)`, `ζ_AV(s2,s1,s3)`.
    pub components: [ApproxValue; 4],
}

impl RelationCheck {
    pub fn passes(&self) -> bool {
        self.residual.norm() <= self.budget
    }
}

fn zeta_value(s: Complex64) -> Result<ApproxValue> {
    if s.re > 0.0 {
        let cutoff = (2.0 * (1.0 + s.im.abs())).ceil().max(32.0) as usize;
        riemann_zeta_em(s, cutoff, 8)
    } else {
        zeta_continued(s)
    }
}

/// Every constituent of the relation at `args`, evaluated by `route`.
pub fn relation_check(args: &ZetaArgs, eps: f64, route: Route) -> Result<RelationCheck> {
    if !(eps > 0.0) {
        return Err(ZetaError::domain("relation_check", "eps > 0 required"));
    }
    let swapped = args.swapped();
    let (mt, av12, av21) = match route {
        Route::Direct => (mt2_direct(args, eps)?, av2_direct(args, eps)?, av2_direct(&swapped, eps)?),
        Route::Accelerated => {
            // a different split for ζ_MT keeps the two sides from sharing truncation errors
            let base = AcceleratedParams::for_args(args);
            let shifted = AcceleratedParams { start: base.start + 7, ..base };
            (
                mt2_accelerated(args, eps, Some(shifted))?,
                av2_accelerated(args, eps, Some(base))?,
                av2_accelerated(&swapped, eps, Some(base))?,
            )
        }
        Route::Approx => (mt2_approx(args)?, av2_approx_second(args)?, av2_approx_second(&swapped)?),
    };
    let z = zeta_value(args.sum())?;
    let factor = pow_neg_ln(std::f64::consts::LN_2, args.s3());
    let diag = ApproxValue::new(factor * z.value, factor.norm() * z.error_bound, z.rigor)?;
    let residual = mt.value - diag.value - av12.value - av21.value;
    let scale = mt.value.norm() + diag.value.norm() + av12.value.norm() + av21.value.norm();
    let budget = mt.error_bound + diag.error_bound + av12.error_bound + av21.error_bound + 8.0 * f64::EPSILON * scale;
    let rigor = mt.rigor.and(diag.rigor).and(av12.rigor).and(av21.rigor);
    Ok(RelationCheck { residual, budget, rigor, components: [mt, diag, av12, av21] })
}

/// `LHS − RHS` of the relation with all constituents from direct series.
pub fn functional_relation_residual(args: &ZetaArgs, eps: f64) -> Result<Complex64> {
    Ok(relation_check(args, eps, Route::Direct)?.residual)
}
