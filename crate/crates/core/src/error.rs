use thiserror::Error;

/// Errors raised while building codes, geometry or component codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field degree {0} (supported: 2..=24)")]
    UnsupportedDegree(u32),
    #[error("polynomial {poly:#x} is not primitive of degree {degree}")]
    NotPrimitive { poly: u64, degree: u32 },
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("position {0:?} is out of bounds")]
    OutOfBounds(Vec<usize>),
    #[error("invalid dimension index {index} for a {rank}-dimensional array")]
    InvalidDimension { index: usize, rank: usize },
    #[error("field GF(2^{m}) is too small for an array of {volume} cells")]
    FieldTooSmall { m: u32, volume: usize },
    #[error("degenerate field: {0}")]
    DegenerateField(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("unsupported by theorem: {0}")]
    UnsupportedByTheorem(String),
    #[error("empty error pattern")]
    EmptyPattern,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Why a syndrome could not be turned into a unique correction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("uncorrectable syndrome")]
    Uncorrectable,
    #[error("ambiguous syndrome: {0} distinct consistent patterns")]
    Ambiguous(usize),
    #[error("component code {0} failed to decode")]
    Component(usize),
}
