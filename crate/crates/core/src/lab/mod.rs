//! Mean-square laboratory: regime classification, `∫_2^T |ζ|² dt3` by
//! panel quadrature, residual exponent fits, and the Montgomery–Vaughan
//! mean value check.

mod fit;
mod grid;
mod mean_square;
mod mv;
mod plan;
mod regime;

pub use fit::{fit_power_law, residual_exponent_fit, ExponentFit, DROP_FRACTION};
pub use grid::node_spacing;
pub use mean_square::{mean_square, mean_square_with, MeanSquareReport, RunManifest};
pub use mv::{mv_check, DirichletPoly, MvCheck};
pub use plan::{Evaluator, MeanSquarePlan};
pub use regime::{
    classify_regime, regime_hypotheses, InequalityCheck, RegimeClassification, Target, Theorem, REGIME_TOL,
};
