use thiserror::Error;

/// Errors raised by the exact arithmetic, orbit and spectrum layers.
///
/// Every variant carries the offending input in normalized text form so the
/// CLI can echo it back verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} and {right} live in different quadratic fields")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected an irrational value, got rational {0}")]
    RationalInput(String),

    #[error("precision exhausted at {bits} bits while deciding {what}")]
    PrecisionExhausted { bits: u32, what: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("kind error: {0}")]
    Kind(String),

    #[error("jump subsequence violated at n = {n} (term {term} is not a jump of the larger sequence)")]
    SubsequenceViolation { n: u64, term: String },

    #[error("jump sequences nested to horizon {horizon} but {xi1} is not an integer multiple of {xi2}")]
    FactorContradiction { xi1: String, xi2: String, horizon: u64 },

    #[error("action tie between {first} and {second} at action {action}")]
    ActionTie {
        first: String,
        second: String,
        action: String,
    },

    #[error("no hit found up to k = {k_max}")]
    NotFound { k_max: u64 },

    #[error("identity check failed: {0}")]
    IdentityViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
