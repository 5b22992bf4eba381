use thiserror::Error;

use crate::scalar::Mode;

/// Errors raised by the algebra, claim and front-end layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("{op} is not supported in {mode} mode")]
    ModeUnsupported { op: &'static str, mode: Mode },

    #[error("mixed scalar modes: {left} and {right}")]
    MixedModes { left: Mode, right: Mode },

    #[error("{op} needs at least {min} operands, got {got}")]
    Arity {
        op: &'static str,
        min: usize,
        got: usize,
    },

    #[error("tuple size {n} exceeds the limit of {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
