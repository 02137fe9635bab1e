use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point is not on the unit sphere (|x| = {norm})")]
    NotOnSphere { norm: f64 },

    #[error("direction is not a unit vector (|v| = {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("direction is not tangent to the base point (<p, v> = {dot})")]
    NotTangent { dot: f64 },

    #[error("model radius is unbounded for flat space with A = 0")]
    UnboundedModelRadius,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("body has empty interior (max rho = {max_rho})")]
    EmptyInterior { max_rho: f64 },

    #[error("{what} did not converge after {iterations} iterations (gap {gap})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        gap: f64,
    },

    #[error("arguments outside the admissible domain: {0}")]
    Inadmissible(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("chord of length {length} has no endpoint on the boundary")]
    ChordTooLong { length: f64 },

    #[error("body file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
