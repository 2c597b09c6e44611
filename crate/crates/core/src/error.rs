use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: lower bound exceeds upper bound")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("interval bound is not finite")]
    NonFiniteBound,

    #[error("frame of discernment must have at least one label")]
    EmptyFrame,

    #[error("frame has {0} labels; at most 64 are supported")]
    FrameTooLarge(usize),

    #[error("duplicate frame label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown state label `{0}`")]
    UnknownLabel(String),

    #[error("proposition must be a non-empty subset of the frame")]
    EmptyProposition,

    #[error("proposition {0} is anchored more than once")]
    DuplicateProposition(String),

    #[error("state space has no anchored propositions")]
    NoAnchors,

    #[error("need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("proposition indexing differs between operands")]
    IndexMismatch,

    #[error("invalid mass function: {0}")]
    InvalidMass(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("value {0} lies outside every bin")]
    OutOfRange(f64),

    #[error("invalid bin specification: {0}")]
    InvalidBins(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("step count must be at least 1")]
    ZeroSteps,
}
