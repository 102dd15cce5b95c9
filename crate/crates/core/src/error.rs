use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed letter token {token:?}: expected <decimal><sign>, e.g. \"2+\" or \"0-\"")]
    MalformedToken { token: String },

    #[error("letter value {value} exceeds arity k={k}")]
    ValueOutOfRange { value: u32, k: u32 },

    #[error("arity mismatch: expected k={expected}, got k={actual}")]
    ArityMismatch { expected: u32, actual: u32 },

    #[error("arity k must be >= 1")]
    ZeroArity,

    #[error("insertion position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },

    #[error("operation undefined on the empty word")]
    EmptyWord,

    #[error("permutation values and signs differ in length ({values} vs {signs})")]
    LengthMismatch { values: usize, signs: usize },

    #[error("duplicate value {value} in permutation")]
    DuplicateValue { value: i64 },

    #[error("malformed sign token {token:?}: expected \"+\" or \"-\"")]
    MalformedSign { token: String },

    #[error("value {value} already present in forest")]
    DuplicateForestValue { value: i64 },

    #[error("invalid victim {victim} for inserting {inserted}: must be present on the correct side")]
    InvalidVictim { victim: i64, inserted: i64 },

    #[error("no free slot under node {bound} admits value {value} with that sign")]
    IncompatibleSlot { bound: i64, value: i64 },

    #[error("element {value} already present in multiset")]
    DuplicateMultisetValue { value: i64 },

    #[error("element {value} not present in multiset")]
    MissingMultisetValue { value: i64 },

    #[error("resource limit exceeded: {what} would exceed cap of {limit}")]
    ResourceLimit { what: &'static str, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
