//! Finite distributions used as substrates for the risk-bound oracles.

use crate::error::ExpectileError;

const PROB_SUM_TOL: f64 = 1e-12;

/// A distribution with finite support: values `y_k` with probabilities `p_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    support: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteDist {
    /// Builds a distribution, validating that the support is finite and the
    /// probabilities are nonnegative and sum to 1 within `1e-12`.
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self, ExpectileError> {
        if support.is_empty() || support.len() != probs.len() {
            return Err(ExpectileError::InvalidDistribution(format!(
                "support and probability lists must be nonempty and of equal length \
                 (got {} and {})",
                support.len(),
                probs.len()
            )));
        }
        if let Some(&bad) = support.iter().find(|v| !v.is_finite()) {
            return Err(ExpectileError::InvalidDistribution(format!(
                "non-finite support value {bad}"
            )));
        }
        if let Some(&bad) = probs.iter().find(|&&p| !p.is_finite() || p < 0.0) {
            return Err(ExpectileError::InvalidDistribution(format!(
                "invalid probability {bad}"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(ExpectileError::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self { support, probs })
    }

    /// Uniform distribution over the given support values.
    pub fn uniform(support: Vec<f64>) -> Result<Self, ExpectileError> {
        let n = support.len();
        if n == 0 {
            return Err(ExpectileError::InvalidDistribution(
                "empty support".to_string(),
            ));
        }
        let p = 1.0 / n as f64;
        // Exact unit sum regardless of rounding in 1/n.
        let mut probs = vec![p; n];
        let correction = 1.0 - probs.iter().sum::<f64>();
        probs[0] += correction;
        Self::new(support, probs)
    }

    /// Distribution putting all mass on a single value.
    pub fn point_mass(y: f64) -> Result<Self, ExpectileError> {
        Self::new(vec![y], vec![1.0])
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same distribution translated by `c`.
    pub fn shifted(&self, c: f64) -> Result<Self, ExpectileError> {
        Self::new(
            self.support.iter().map(|y| y + c).collect(),
            self.probs.clone(),
        )
    }
}

/// A finite joint distribution on `X x Y`: covariate points with marginal
/// weights and one conditional [`DiscreteDist`] over `y` per point.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePXY {
    x_points: Vec<Vec<f64>>,
    x_probs: Vec<f64>,
    cond: Vec<DiscreteDist>,
}

impl FinitePXY {
    pub fn new(
        x_points: Vec<Vec<f64>>,
        x_probs: Vec<f64>,
        cond: Vec<DiscreteDist>,
    ) -> Result<Self, ExpectileError> {
        if x_points.is_empty()
            || x_points.len() != x_probs.len()
            || x_points.len() != cond.len()
        {
            return Err(ExpectileError::InvalidJoint(format!(
                "need matching nonempty x points, weights, and conditionals \
                 (got {}, {}, {})",
                x_points.len(),
                x_probs.len(),
                cond.len()
            )));
        }
        if let Some(&bad) = x_probs.iter().find(|&&p| !p.is_finite() || p < 0.0) {
            return Err(ExpectileError::InvalidJoint(format!(
                "invalid marginal weight {bad}"
            )));
        }
        let total: f64 = x_probs.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(ExpectileError::InvalidJoint(format!(
                "marginal weights sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            x_points,
            x_probs,
            cond,
        })
    }

    pub fn len(&self) -> usize {
        self.x_points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x_points(&self) -> &[Vec<f64>] {
        &self.x_points
    }

    pub fn x_probs(&self) -> &[f64] {
        &self.x_probs
    }

    pub fn conditionals(&self) -> &[DiscreteDist] {
        &self.cond
    }
}
