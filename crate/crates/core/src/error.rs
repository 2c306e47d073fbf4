use thiserror::Error;

/// Errors raised by field, polynomial and group operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different field contexts ({left} vs {right})")]
    ContextMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus 0x{modulus:x} for degree {degree}: {reason}")]
    InvalidModulus {
        degree: u32,
        modulus: u128,
        reason: &'static str,
    },
    #[error("field degree {0} is outside the supported range 1..=64")]
    UnsupportedDegree(u32),
    #[error("degree {sub} does not divide degree {sup}")]
    NotASubfield { sub: u32, sup: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A relation that must hold by construction failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
