//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain violation: {0}")]
    Domain(String),

    /// Subdivision or refinement budget exhausted before a verdict.
    #[error("budget exhausted after {work} steps{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
    BudgetExceeded { work: u64, detail: Option<String> },

    /// Operation requires a primitive character.
    #[error("character mod {modulus} is not primitive (conductor {conductor})")]
    NotPrimitive { conductor: u64, modulus: u64 },

    /// An enclosure of s touched the pole at s = 1.
    #[error("evaluation point too close to the pole at s = 1")]
    PoleProximity,

    /// The requested ordinate grazes a zero; the caller should perturb and retry.
    #[error("height grazes a zero of the completed function; retry with a nudged ordinate")]
    NudgeNeeded,

    /// Scanned zero list disagrees with the argument-principle count.
    #[error("zero list incomplete: count certifies {certified}, records give {recorded}")]
    CompletenessFailure { certified: i64, recorded: i64 },

    /// A checked inequality among the input parameters failed.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Parameters fall outside every supported regime.
    #[error("parameter regime mismatch: {0}")]
    RegimeMismatch(String),

    /// Serialized data does not match the expected schema.
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    /// Records violate the required sort order.
    #[error("unsorted input: {0}")]
    UnsortedInput(String),

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn budget(work: u64) -> Self {
        Error::BudgetExceeded { work, detail: None }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
