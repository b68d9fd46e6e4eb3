use thiserror::Error;

/// Failures raised by the library. Every public operation that can reject
/// its input or fail to converge reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of the operation (bad index pattern,
    /// non-unit direction, point outside the cube, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical precondition is not met, e.g. too few quadrature nodes
    /// to integrate the requested trigonometric products exactly.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Adaptive quadrature ran out of panels before reaching its tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error:e}")]
    Accuracy { estimate: f64, error: f64 },

    /// A runtime check of a structural claim failed (e.g. a root that
    /// should be unique was bracketed more than once).
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
