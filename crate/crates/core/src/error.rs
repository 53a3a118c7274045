use thiserror::Error;

/// Errors raised by the lattice, cone, pair, quotient and group routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generators do not span a full-rank lattice")]
    SingularLattice,

    #[error("lattice is not contained in the proposed overlattice")]
    NotSublattice,

    #[error("zero vector has no ray")]
    ZeroVector,

    #[error("vector is not a point of the lattice")]
    NotInLattice,

    #[error("degenerate cone: {0}")]
    DegenerateCone(String),

    #[error("slice functional is not strictly positive on every ray")]
    UnboundedSlice,

    #[error("cap exceeded ({cap})")]
    CapExceeded { cap: usize },

    #[error("point is not in the relative interior of the cone")]
    NotInterior,

    #[error("point is not primitive in the lattice")]
    NotPrimitive,

    #[error("point is not in the cone")]
    NotInCone,

    #[error("K + B is not Q-Cartier: the log discrepancy functional does not exist")]
    NotQGorenstein,

    #[error("pair is not klt")]
    NotKlt,

    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),

    #[error("pair and subgroup live on different lattices or cones")]
    LatticeMismatch,

    #[error("valuation is not a point of the upstairs lattice")]
    NotInUpstairsLattice,

    #[error("element order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ToricError {
    fn from(e: std::io::Error) -> Self {
        ToricError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for ToricError {
    fn from(e: serde_json::Error) -> Self {
        ToricError::Parse(e.to_string())
    }
}

impl From<csv::Error> for ToricError {
    fn from(e: csv::Error) -> Self {
        ToricError::Io(e.to_string())
    }
}

pub type Result<T, E = ToricError> = std::result::Result<T, E>;
