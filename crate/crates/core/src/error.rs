use thiserror::Error;

/// Errors raised across the library. Positions, line numbers and row
/// indices are all 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,
    #[error("invalid symbol at position {0} (expected 'R' or 'B')")]
    InvalidSymbol(usize),
    #[error("sequence of length {0} exceeds the representable maximum of {max}", max = crate::sequences::MAX_SEQUENCE_LENGTH)]
    SequenceTooLong(usize),
    #[error("rank {rank} is out of range for sequences of length {len}")]
    RankOutOfRange { len: usize, rank: u64 },
    #[error("invalid length n={n}: must satisfy 1 <= n <= {cap}")]
    InvalidLength { n: usize, cap: usize },

    #[error("sequence {0} is not valid under the model")]
    InvalidSequence(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("cannot parse model spec {text:?}: {reason}")]
    ModelSyntax { text: String, reason: String },

    #[error("parse error on line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error("non-contiguous b-file index: expected {expected}, found {found}")]
    IndexGap { expected: u64, found: u64 },
    #[error("terms exhausted in the middle of row {0}")]
    TruncatedRow(usize),
    #[error("row-length rule has no length for row {0}")]
    RowRuleExhausted(usize),
    #[error("invalid row-length rule {0:?}")]
    RowRuleSyntax(String),
    #[error("invalid triangle: {0}")]
    InvalidTriangle(String),
    #[error("triangle has no row {0}")]
    MissingRow(usize),
    #[error("triangle row {n} has no entry at k={k}")]
    MissingEntry { n: usize, k: i64 },

    #[error("row {0} matches; there is no failure to explain")]
    NotAFailure(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
