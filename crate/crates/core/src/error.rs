use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested quantity cannot be bounded with the information available
    /// (unknown coefficients, unsummable weights, too-short prefixes).
    #[error("capability error: {0}")]
    Capability(String),

    /// A structural precondition on an input (tag, normalisation, monotonicity) fails.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The radius equation has no sign change on the scanned interval.
    #[error("no radius: {0}")]
    NoRadius(String),

    /// A reported violation did not survive recomputation at doubled truncation order.
    #[error("tooling error: {0}")]
    Tooling(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("r = {r} is outside [0, 1)")))
    }
}
