use thiserror::Error;

/// Errors raised by the geometry, grid, patch-search and number-theory layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,
    #[error("spaces differ: {0} vs {1}")]
    SpaceMismatch(String, String),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation needs at least two distinct points")]
    Singleton,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scales are not nested: R/r = {0} is not an integer >= 2")]
    NonNestedScales(String),
    #[error("no scale pair has R/r >= {0}")]
    NoAdmittedPairs(String),
    #[error("cell {0} contains no point of the set")]
    EmptyCell(String),
    #[error("pattern is degenerate (fewer than two distinct points)")]
    DegeneratePattern,
    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: duplicate point")]
    DuplicatePoint { line: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
