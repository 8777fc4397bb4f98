use enn_expectile::ExpectileError;
use enn_models::ModelError;
use enn_optim::OptimError;
use enn_simgen::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown fit method `{0}`")]
    UnknownMethod(String),
    #[error("fit failed: {0}")]
    FitFailed(String),
    #[error("study failed: {0}")]
    StudyFailed(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Optim(#[from] OptimError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Expectile(#[from] ExpectileError),
    #[error("report i/o failed: {0}")]
    Io(#[from] std::io::Error),
}
