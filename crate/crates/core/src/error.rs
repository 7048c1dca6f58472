use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edges do not form a perfect matching: {0}")]
    NotAMatching(String),
    #[error("label {label} out of range for modulus {m}")]
    BadLabel { label: u32, m: u32 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("expected modulus {expected}, got {got}")]
    BadModulus { expected: u32, got: u32 },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("no value assigned to delta_{0}")]
    MissingAssignment(usize),
    #[error("index {index} out of range ({range})")]
    IndexOutOfRange { index: usize, range: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group spec: {0}")]
    BadSpec(String),
    #[error("group context invariant violated: {0}")]
    InvariantViolation(String),
    #[error("operator is not a scalar multiple of the contraction: {0}")]
    NotScalarMultiple(String),
    #[error("spanning set does not span an algebra: {0}")]
    NotAnAlgebra(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
