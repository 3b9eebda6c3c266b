use thiserror::Error;

pub type Result<T> = std::result::Result<T, ZetaError>;

/// Failure modes shared by every evaluation routine.
///
/// All variants except [`ZetaError::NonFinite`] describe inputs the caller
/// can fix; [`ZetaError::is_precondition`] makes that split explicit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZetaError {
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("{op} has a pole at {at}")]
    Pole { op: &'static str, at: String },

    #[error("outside the absolute-convergence region: requires {violated}")]
    Region { violated: String },

    #[error("precondition violated: requires {violated}")]
    Precondition { violated: String },

    #[error("too close to the singular hyperplane {hyperplane} (distance {distance:.3e})")]
    SingularHyperplane { hyperplane: &'static str, distance: f64 },

    #[error("evaluator not admissible at t3 = {t3}: {reason}")]
    Path { t3: f64, reason: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid quadrature specification: {0}")]
    Quadrature(String),

    #[error("invalid constants file: {0}")]
    Constants(String),

    #[error("non-finite intermediate value in {0}")]
    NonFinite(String),
}

impl ZetaError {
    /// True for errors caused by the inputs rather than by the engine.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, ZetaError::NonFinite(_))
    }

    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        ZetaError::Domain { op, reason: reason.into() }
    }

    pub(crate) fn region(violated: impl Into<String>) -> Self {
        ZetaError::Region { violated: violated.into() }
    }

    pub(crate) fn precondition(violated: impl Into<String>) -> Self {
        ZetaError::Precondition { violated: violated.into() }
    }
}
