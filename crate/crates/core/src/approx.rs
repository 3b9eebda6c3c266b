use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};
use crate::kernel::ComplexValue;

/// Whether an error budget is a proven bound or an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigor {
    Rigorous,
    Heuristic,
}

impl Rigor {
    /// Rigorous only if both inputs are.
    pub fn and(self, other: Rigor) -> Rigor {
        match (self, other) {
            (Rigor::Rigorous, Rigor::Rigorous) => Rigor::Rigorous,
            _ => Rigor::Heuristic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rigor::Rigorous => "rigorous",
            Rigor::Heuristic => "heuristic",
        }
    }
}

/// A computed value together with its truncation/quadrature error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxValue {
    pub value: ComplexValue,
    pub error_bound: f64,
    pub rigor: Rigor,
}

impl ApproxValue {
    pub fn new(value: ComplexValue, error_bound: f64, rigor: Rigor) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(ZetaError::NonFinite(format!("value {value}")));
        }
        if !(error_bound >= 0.0) {
            return Err(ZetaError::NonFinite(format!("error bound {error_bound}")));
        }
        Ok(Self { value, error_bound, rigor })
    }

    pub fn rigorous(value: ComplexValue, error_bound: f64) -> Result<Self> {
        Self::new(value, error_bound, Rigor::Rigorous)
    }

    pub fn heuristic(value: ComplexValue, error_bound: f64) -> Result<Self> {
        Self::new(value, error_bound, Rigor::Heuristic)
    }

    /// `|self − other| ≤ self.error_bound + other.error_bound + slack`.
    pub fn agrees_with(&self, other: &ApproxValue, slack: f64) -> bool {
        (self.value - other.value).norm() <= self.error_bound + other.error_bound + slack
    }
}
