use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is not supported (expected 1..=16)")]
    UnsupportedDegree(u32),

    #[error("modulus {modulus:#x} is not a primitive polynomial of degree {r}")]
    InvalidModulus { r: u32, modulus: u32 },

    #[error("no modulus configured for degree {0}")]
    MissingModulus(u32),

    #[error("{0}")]
    OutOfRange(String),

    #[error("{0}")]
    Domain(String),

    #[error("field contexts differ: GF(2^{left}) vs GF(2^{right})")]
    ContextMismatch { left: u32, right: u32 },

    #[error("{0}")]
    Precondition(String),

    #[error("exponent overflow in symbolic polynomial")]
    ExponentOverflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("constraint check failed: {0}")]
    ConstraintFailed(String),
}
