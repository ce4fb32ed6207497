use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational functions carry different order tags")]
    TagMismatch,
    #[error("duplicate exponent {0} in term list")]
    DuplicateExponent(i64),
    /// A lazy series ran out of scanned coefficients without finding a
    /// nonzero one. The payload is the horizon that was exhausted.
    #[error("no nonzero coefficient found up to exponent {0}")]
    PrecisionExhausted(i64),
    #[error("operation not supported in field {0}")]
    UnsupportedField(&'static str),
    #[error("intervals are not nested at index {0}")]
    NotNested(usize),
    #[error("term {index} still has a nonzero coefficient at exponent {exponent} past its claimed bound")]
    NotSummable { index: usize, exponent: i64 },
    #[error("dyadic sequence stabilized; the cut is unsuitable for this construction")]
    StabilizedSequence,
    #[error("no stabilization bound supplied and no counter-witness found within the scan budget")]
    HeuristicInconclusive,
    #[error("the cut has a genuine cutpoint")]
    NotAGap,
    #[error("symbol {0} does not exist in field {1}")]
    SymbolNotInField(char, &'static str),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}
