use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("step {index}: color {color} out of range for {letter} at height {height} (allowed < {limit})")]
    ColorOutOfRange {
        index: usize,
        letter: char,
        height: usize,
        color: usize,
        limit: usize,
    },

    #[error("patterns longer than {max} are not supported (got length {len})")]
    PatternTooLong { len: usize, max: usize },

    #[error("scheme {subset} with marks {{{marks}}} is not derivable from the cycle-diagram construction")]
    UnsupportedScheme { subset: String, marks: String },

    #[error("brute-force enumeration of n = {n} exceeds the configured cap {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term is not invertible")]
    NotInvertible,

    #[error("{op} requires constant term {expected}")]
    ConstantTerm { op: &'static str, expected: &'static str },

    #[error("inversion requires a_0 = 1")]
    LeadingTerm,

    #[error("requested order {requested} exceeds the determined range {available}")]
    BeyondDeterminedRange { requested: usize, available: usize },

    #[error("no continued fraction with nonzero weights fits the input")]
    FailedRecovery,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}
