use serde::{Deserialize, Serialize};

use crate::error::OptimError;

/// Optimizer configuration.  `converged` in the result means the gradient
/// norm fell below `grad_tol` or one accepted step decreased the objective
/// by less than `rel_obj_tol` relative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimOptions {
    pub max_iters: usize,
    pub grad_tol: f64,
    pub rel_obj_tol: f64,
    pub wolfe_c1: f64,
    pub wolfe_c2: f64,
    pub n_starts: usize,
    pub warmup_iters: usize,
    pub seed: u64,
}

impl Default for OptimOptions {
    fn default() -> Self {
        Self {
            max_iters: 500,
            grad_tol: 1e-6,
            rel_obj_tol: 1e-9,
            wolfe_c1: 1e-4,
            wolfe_c2: 0.9,
            n_starts: 10,
            warmup_iters: 5,
            seed: 0,
        }
    }
}

impl OptimOptions {
    pub fn validate(&self) -> Result<(), OptimError> {
        if self.max_iters == 0 {
            return Err(OptimError::InvalidOptions(
                "max_iters must be at least 1".to_string(),
            ));
        }
        if self.n_starts == 0 {
            return Err(OptimError::InvalidOptions(
                "n_starts must be at least 1".to_string(),
            ));
        }
        if !(self.wolfe_c1 > 0.0 && self.wolfe_c1 < self.wolfe_c2 && self.wolfe_c2 < 1.0) {
            return Err(OptimError::InvalidOptions(format!(
                "need 0 < c1 < c2 < 1 (got c1 = {}, c2 = {})",
                self.wolfe_c1, self.wolfe_c2
            )));
        }
        if !(self.grad_tol.is_finite() && self.grad_tol >= 0.0) {
            return Err(OptimError::InvalidOptions(format!(
                "grad_tol must be a nonnegative real (got {})",
                self.grad_tol
            )));
        }
        if !(self.rel_obj_tol.is_finite() && self.rel_obj_tol >= 0.0) {
            return Err(OptimError::InvalidOptions(format!(
                "rel_obj_tol must be a nonnegative real (got {})",
                self.rel_obj_tol
            )));
        }
        Ok(())
    }
}

/// Outcome of one minimization run.  `f_trace` holds the objective at the
/// start followed by every accepted iterate, and is always nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimResult {
    pub x_final: Vec<f64>,
    pub f_final: f64,
    pub grad_norm_final: f64,
    pub iterations: usize,
    pub converged: bool,
    pub f_trace: Vec<f64>,
}
