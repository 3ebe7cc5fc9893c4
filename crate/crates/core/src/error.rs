//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("non-finite value in input")]
    NonFinite,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("margins use incompatible metrics")]
    MetricMismatch,

    #[error("unbalanced transportation problem: supply {supply} != demand {demand}")]
    Unbalanced { supply: u64, demand: u64 },

    #[error("problem too large: {arcs} arcs exceeds limit {limit}")]
    TooLarge { arcs: u64, limit: u64 },

    #[error("costs must be finite and nonnegative")]
    InvalidCost,

    #[error("instance too large for exhaustive enumeration (total mass > {limit})")]
    BruteForceLimit { limit: u64 },

    #[error("eCor undefined: degenerate margin")]
    UndefinedECor,

    #[error("dCor undefined: zero distance variance")]
    UndefinedDCor,

    #[error("correlation undefined: zero variance")]
    ZeroVariance,

    #[error("atom masses must be positive and sum to one")]
    BadJointMasses,

    #[error("joint probability violates the Frechet bounds")]
    FrechetViolation,

    #[error("quadrature failed to converge")]
    QuadratureFailure,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
