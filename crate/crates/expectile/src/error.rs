use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExpectileError {
    #[error("expectile level must lie strictly inside (0, 1), got {0}")]
    InvalidLevel(f64),
    #[error("invalid discrete distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid joint distribution: {0}")]
    InvalidJoint(String),
    #[error("expectile of an empty sample set is undefined")]
    EmptySamples,
    #[error("non-finite sample value {0}")]
    NonFiniteSample(f64),
}
