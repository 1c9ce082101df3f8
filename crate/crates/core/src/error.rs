use thiserror::Error;

/// Errors reported for invalid input or exhausted searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} must be a positive integer")]
    NotPositive(&'static str),

    #[error("{a} is not coprime to {q}")]
    NotCoprime { a: String, q: String },

    #[error("tuple arity {0} is outside 1..=16")]
    Arity(usize),

    #[error("k = {k} is outside the supported range {min}..={max}")]
    KOutOfRange { k: usize, min: usize, max: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("no prime found up to the search limit {limit}; raise the limit")]
    SearchExhausted { limit: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
