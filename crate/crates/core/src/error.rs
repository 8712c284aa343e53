use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} occurs more than once")]
    DuplicateValue(u64),
    #[error("0 is not a valid value; naturals start at 1")]
    ZeroValue,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("value {0} does not occur in the prefix")]
    ValueAbsent(u64),
    #[error("value sets differ")]
    ValueSetMismatch,
    #[error("chain is not descending at listing {0}")]
    ChainInvariantViolated(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad pattern: {0}")]
    BadPattern(String),
    #[error("bad extra element: {0}")]
    BadExtra(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("prefix too short: value {0} is not enumerated")]
    InsufficientPrefix(u64),
    #[error("sample bound {bound} is below n = {n}")]
    BadBound { bound: u64, n: u64 },
    #[error("invalid sample: {0}")]
    BadSample(String),
    #[error("spec parse error at byte {position}: expected {expected}")]
    SpecParse { position: usize, expected: String },
    #[error("unknown halting model {0:?}")]
    UnknownModel(String),
    #[error("n = {n} exceeds the bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("n = {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("parse error: {0}")]
    Parse(String),
}
