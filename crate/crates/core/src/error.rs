use thiserror::Error;

/// Errors raised by the algebra kernel and the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} does not fit in 32 bits")]
    PrimeTooLarge(u64),
    #[error("invalid ring description: {0}")]
    BadRing(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live in different rings")]
    ContextMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("q = {q} is not a power of p = {p}")]
    NotPPower { q: u64, p: u64 },
    #[error("q = {q} exceeds the configured cap {cap}")]
    QCapExceeded { q: u64, cap: u64 },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("chain is not {direction} at step {step}")]
    ChainViolation { step: usize, direction: String },
    #[error("HSL chain step s = {s} needs q = {q}, above the cap {cap}")]
    ChainCapExceeded { s: usize, q: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
