use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates its documented constraint.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An operation was requested outside the domain where it is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature did not reach the requested tolerance. The best
    /// estimate and the last refinement difference are kept for callers that
    /// can live with a degraded answer.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    NotConverged { estimate: f64, error_bound: f64 },

    /// An integral is (numerically) divergent.
    #[error("divergent integral: {0}")]
    Divergent(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for the quadrature-related variants.
    pub fn is_quadrature_failure(&self) -> bool {
        matches!(self, Error::NotConverged { .. } | Error::Divergent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
