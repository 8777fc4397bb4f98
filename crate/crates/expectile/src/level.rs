use serde::{Deserialize, Serialize};

use crate::error::ExpectileError;

/// An expectile level `tau`, constrained to the open interval (0, 1).
///
/// The level determines the asymmetric weighting of squared residuals:
/// `tau` above the fit, `1 - tau` below. `tau = 0.5` recovers the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ExpectileLevel(f64);

impl ExpectileLevel {
    pub fn new(tau: f64) -> Result<Self, ExpectileError> {
        if !tau.is_finite() || tau <= 0.0 || tau >= 1.0 {
            return Err(ExpectileError::InvalidLevel(tau));
        }
        Ok(Self(tau))
    }

    pub fn tau(self) -> f64 {
        self.0
    }

    /// Weight applied to the squared residual of an observation `y` under fit `t`.
    #[inline]
    pub fn weight(self, y: f64, t: f64) -> f64 {
        if y < t {
            1.0 - self.0
        } else {
            self.0
        }
    }

    /// `min(tau, 1 - tau)`, the smaller of the two residual weights.
    pub fn min_weight(self) -> f64 {
        self.0.min(1.0 - self.0)
    }

    /// `max(tau, 1 - tau)`, the larger of the two residual weights.
    pub fn max_weight(self) -> f64 {
        self.0.max(1.0 - self.0)
    }
}

impl TryFrom<f64> for ExpectileLevel {
    type Error = ExpectileError;

    fn try_from(tau: f64) -> Result<Self, Self::Error> {
        Self::new(tau)
    }
}

impl From<ExpectileLevel> for f64 {
    fn from(level: ExpectileLevel) -> f64 {
        level.0
    }
}

impl std::fmt::Display for ExpectileLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
