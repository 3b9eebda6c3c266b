//! Truncated double series in their absolute-convergence regions.

mod accelerated;
mod args;
mod direct;
pub(crate) mod majorant;
mod square;
mod square_model;

pub use accelerated::{av2_accelerated, mt2_accelerated, AcceleratedParams};
pub use args::{Truncation, ZetaArgs};
pub use direct::{av2_direct, av2_direct_with, av2_truncated, mt2_direct, mt2_direct_with, mt2_truncated};
pub use square::{av2_sq, av2_sq_truncated, av2_sq_with, mt2_sq, mt2_sq_truncated, mt2_sq_with};

pub(crate) use direct::{av_triangle_sum, check_av_region, check_mt_region, mt_square_sum};

use crate::approx::ApproxValue;

/// Limits on direct summation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesOptions {
    /// Largest outer index `M` for the double series.
    pub max_outer: usize,
    /// Largest diagonal index `K` for the square series.
    pub max_square: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { max_outer: 1 << 16, max_square: 1 << 15 }
    }
}

/// A series value together with the truncation that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvaluation {
    pub value: ApproxValue,
    pub truncation: Truncation,
    /// True when the requested accuracy needed more terms than the cap allows.
    pub clamped: bool,
}
