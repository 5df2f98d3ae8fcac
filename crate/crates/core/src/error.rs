use thiserror::Error;

/// Errors raised by the model and its numerical machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// An input lies outside the domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructor was given values that violate a type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature stopped before meeting its tolerance.
    #[error("quadrature did not converge (value {value:e}, error estimate {err_estimate:e})")]
    NotConverged { value: f64, err_estimate: f64 },
}

pub type Result<T> = std::result::Result<T, ModelError>;

pub(crate) fn domain(msg: impl Into<String>) -> ModelError {
    ModelError::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> ModelError {
    ModelError::InvalidParameter(msg.into())
}
