use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("malformed operator word at position {position}: {detail}")]
    MalformedWord { position: usize, detail: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("invalid category data: {0}")]
    InvalidCategory(String),

    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),

    #[error("enumeration budget of {limit} candidate assignments exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("incompatible inputs: {0}")]
    Mismatch(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
