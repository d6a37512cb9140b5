use thiserror::Error;

/// Errors raised while validating or decoding input data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("language must contain at least one atom")]
    EmptyLanguage,
    #[error("language has {0} atoms, the cap is {1}")]
    TooManyAtoms(usize, usize),
    #[error("duplicate atom name {0:?}")]
    DuplicateAtom(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("table field {0:?}: {1}")]
    BadTableKey(String, String),
    #[error("table key {0:?} is missing")]
    MissingSubsetKey(String),
    #[error("table has unexpected key {0:?}")]
    UnexpectedKey(String),
    #[error("table has {got} rows, expected {expected}")]
    WrongRowCount { got: usize, expected: usize },
    #[error("row for {key:?} mentions atoms outside the language")]
    RowOutOfLanguage { key: String },
    #[error("duplicate model name {0:?}")]
    DuplicateModel(String),
    #[error("world has {0} models, the cap is {1}")]
    TooManyModels(usize, usize),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("field {field:?}: {message}")]
    Field { field: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl SchemaError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError::Field {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Errors for operations with real preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("loop bound must be at least 2, got {0}")]
    LoopBoundTooSmall(usize),
    #[error("table is not a cumulative consequence operation: {axiom} fails")]
    NotACLogic { axiom: String },
    #[error("relation violates {rule}")]
    RelationNotCumulative { rule: String },
    #[error("choice function is not well defined on definable sets")]
    IllFormedChoice,
    #[error("corpus spec out of range: {0}")]
    BadCorpusSpec(String),
    #[error("state vector must be nonzero")]
    ZeroState,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
}
