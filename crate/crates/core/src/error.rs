use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {n} exceeds the supported maximum of {max}")]
    Capacity { n: usize, max: usize },

    #[error("expected {expected} entries for n = {n}, got {got}")]
    Length { n: usize, expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular multiplier: {0}")]
    SingularMultiplier(String),

    #[error("value {value} at index {index} is not in {expected}")]
    NonBoolean {
        index: usize,
        value: String,
        expected: &'static str,
    },

    #[error("coordinate {j} out of range 1..={n}")]
    Coordinate { j: usize, n: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
