use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("cable parameter must satisfy n >= 1, got {0}")]
    InvalidN(i64),
    #[error("exact division failed: remainder is nonzero")]
    NotDivisible,
    #[error("diagram too large for this engine: {crossings} crossings exceeds limit {limit}")]
    TooLarge { crossings: usize, limit: usize },
    #[error("frontier width {width} exceeds cap {cap}")]
    FrontierTooWide { width: usize, cap: usize },
    #[error("no valid contraction order found for this diagram")]
    NoContractionOrder,
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("cable labeling inconsistent: {0}")]
    LabelingInconsistent(String),
    #[error("witness edge guaranteed by the generating lemma is missing: {0}")]
    WitnessMissing(String),
    #[error("equivalence classes are not closed under free-set toggling: {0}")]
    PartitionError(String),
    #[error("degree bound violated: {0}")]
    BoundViolation(String),
    #[error("stable coefficient mismatch: {0}")]
    StabilityViolation(String),
    #[error("internal parity check failed: {0}")]
    ParityError(String),
    #[error("duplicate table entry name: {0}")]
    DuplicateName(String),
    #[error("stored record for {name} does not match recomputation")]
    StoreMismatch { name: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
