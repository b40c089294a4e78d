use thiserror::Error;

/// Errors raised by the algebra routines and the text front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact division left a remainder. Always an internal bug.
    #[error("non-exact division: {0}")]
    NonExactDivision(String),

    #[error("mismatched variable count: {left} vs {right}")]
    MismatchedVariableCount { left: usize, right: usize },

    #[error("weight mismatch: left source {left_source}, right target {right_target}")]
    WeightMismatch { left_source: i64, right_target: i64 },

    #[error("degree budget exceeded at degree {degree} (n={n}, lambda={lambda})")]
    DegreeBudgetExceeded {
        n: usize,
        lambda: usize,
        degree: i64,
    },

    #[error("non-terminating reduction: {0}")]
    NonTerminatingReduction(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Text input could not be parsed. `span` is a byte range into the input.
    #[error("parse error at {}..{}: {message}", span.0, span.1)]
    Parse {
        message: String,
        span: (usize, usize),
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(message: impl Into<String>, start: usize, end: usize) -> Self {
        Error::Parse {
            message: message.into(),
            span: (start, end),
        }
    }

    /// True for errors that indicate an internal assertion failure rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonExactDivision(_)
                | Error::DegreeBudgetExceeded { .. }
                | Error::NonTerminatingReduction(_)
        )
    }
}
