use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("outcome has probability {probability:e}, below the update threshold")]
    ZeroProbabilityOutcome { probability: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid projector: {0}")]
    InvalidProjector(String),

    #[error("invalid spectral family: {0}")]
    InvalidFamily(String),

    #[error("invalid ranks {ranks:?} for dimension {dim}")]
    InvalidRanks { dim: usize, ranks: Vec<usize> },

    #[error("invalid sequential table: {0}")]
    InvalidTable(String),

    #[error("first-question marginal for order {order} outcome {outcome} is degenerate")]
    DegenerateMarginal { order: String, outcome: String },

    #[error("point is not a state (minimum eigenvalue {min_eigenvalue:e})")]
    NotAState { min_eigenvalue: f64 },

    #[error("measurement family is degenerate (ranks {ranks:?}); all ranks must be 1")]
    DegenerateFamily { ranks: Vec<usize> },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("inconsistent membrane geometry: {0}")]
    InconsistentGeometry(String),

    #[error("coordinate {0} outside [-1, 1]")]
    CoordinateOutOfRange(f64),

    #[error("invalid membrane: {0}")]
    InvalidMembrane(String),

    #[error("invalid record: {0}")]
    InvalidRecord(String),

    #[error("configuration space of size {size} exceeds cap {cap}")]
    TooLarge { size: u128, cap: u128 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("schema error in {source_path} (record {index}): {message}")]
    Schema {
        source_path: String,
        index: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
