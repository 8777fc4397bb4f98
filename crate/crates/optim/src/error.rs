use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptimError {
    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),
    #[error("invalid starting point: {0}")]
    InvalidStart(String),
    #[error("non-finite {what} at iteration {iteration}")]
    NonFinite { what: String, iteration: usize },
    #[error("every start failed: {0}")]
    AllStartsFailed(String),
}
