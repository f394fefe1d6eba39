use thiserror::Error;

/// Errors raised by the geometric and lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix or vector has non-integral entries")]
    Integrality,

    #[error("point set is not full-dimensional: affine hull has dimension {affine_dim} in ambient dimension {ambient_dim}")]
    Degenerate { affine_dim: isize, ambient_dim: usize },

    #[error("origin is not an interior point of the polytope")]
    Origin,

    #[error("face {0} is not a proper nonempty face")]
    FaceRange(usize),

    #[error("invalid fan: {0}")]
    Fan(String),

    #[error("vector is not in the support of the fan")]
    NotInSupport,

    #[error("chart generator {0} is negative on the cone")]
    Chart(usize),

    #[error("path direction is zero; the path does not diverge")]
    NotDivergent,

    #[error("boundary points belong to different fans")]
    FanMismatch,

    #[error("empty point set")]
    Empty,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
