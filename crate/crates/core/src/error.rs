use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree out of range: {degree} (graded range is 0..={top})")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("inhomogeneous vector: index {index} has degree {found}, expected {expected}")]
    Inhomogeneous {
        index: u32,
        found: usize,
        expected: usize,
    },

    #[error("generator out of range: {0}")]
    GeneratorOutOfRange(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("mismatched algebras: {0}")]
    AlgebraMismatch(String),

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("size guard: {what} is {estimate}, limit is {limit}")]
    SizeGuard {
        what: String,
        estimate: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
