use enn_models::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation spec: {0}")]
    InvalidSpec(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("interaction arity {needed} exceeds the {selected} selected SNP columns")]
    InsufficientColumns { needed: usize, selected: usize },
    #[error("dimension mismatch: expected {expected} columns, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Dataset(#[from] ModelError),
}
