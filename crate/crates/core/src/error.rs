use thiserror::Error;

/// Errors raised by the norm calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),

    #[error("invalid interval ({left}, {right})")]
    InvalidInterval { left: f64, right: f64 },

    #[error("function is not non-increasing (pieces {index} and {next})", next = index + 1)]
    NotMonotone { index: usize },

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("invalid norm spec: {0}")]
    InvalidSpec(String),

    #[error("Orlicz bracket not found after {0} doublings")]
    BisectionFailure(usize),

    #[error("Young function family {0} is not supported here")]
    UnsupportedYoungFamily(&'static str),

    #[error("degenerate convex combination: all functional values vanish")]
    DegenerateCombo,

    #[error("invalid convex combination: {0}")]
    InvalidCombo(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("function extends past 1 (support ends at {0})")]
    UnsupportedSupport(f64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("tail norm {value} at t = {t} fell below the required level 2")]
    NormVanishes { t: f64, value: f64 },

    #[error("no candidate intervals")]
    EmptyCandidates,

    #[error("input has zero norm")]
    ZeroNorm,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
