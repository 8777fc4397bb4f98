use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error("invalid gene groups: {0}")]
    InvalidGeneGroups(String),
    #[error("invalid model file: {0}")]
    InvalidModelFile(String),
    #[error("unknown activation '{0}' (expected relu, sigmoid, tanh, or identity)")]
    UnknownActivation(String),
}
