//! Numerical engine for the Apostol-Vu double zeta-function
//!
//! ```text
//! ζ_AV(s1, s2, s3) = Σ_{m ≥ 1} Σ_{n < m} m^{-s1} n^{-s2} (m + n)^{-s3}
//! ```
//!
//! and the Mordell-Tornheim double zeta-function (same summand, all `m, n ≥ 1`),
//! together with their square series and a laboratory for mean-square
//! experiments in `t3`.
//!
//! The crate is organised bottom-up:
//!
//! - [`kernel`]: complex powers, log-gamma, Euler-Maclaurin zeta, quadrature,
//!   tail integrals and a Mellin-Barnes contour checker.
//! - [`series`]: truncated double series with explicit tail majorants, the
//!   square series, and an Euler-Maclaurin accelerated evaluator.
//! - [`continuation`]: the two approximation formulas for ζ_AV, the
//!   Mordell-Tornheim approximation, and the functional-relation residual.
//! - [`lab`]: regime classification, mean-square integration, residual
//!   exponent fits and the Montgomery-Vaughan mean value check.
//!
//! Every evaluation returns an [`ApproxValue`] carrying an error budget and a
//! flag telling whether that budget is a proven bound or an estimate.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod constants;
pub mod continuation;
pub mod error;
pub mod kernel;
pub mod lab;
pub mod series;
pub mod summation;

pub use approx::{ApproxValue, Rigor};
pub use constants::Constants;
pub use error::{Result, ZetaError};
pub use kernel::ComplexValue;
pub use series::ZetaArgs;
