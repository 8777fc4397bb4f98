use enn_models::{Dataset, Model, ModelSpec};
use enn_optim::{OptimOptions, OptimResult};
use serde::{Deserialize, Serialize};

use crate::error::PipelineError;
use crate::methods::FitMethod;
use crate::metrics::evaluate_mse;

/// The ridge-strength grid searched by default.
pub const DEFAULT_LAMBDA_GRID: [f64; 5] = [0.0, 0.1, 1.0, 10.0, 100.0];

/// Winner of a ridge grid search: the already-fitted model at the selected
/// strength (no refit), with its train and validation errors.
pub struct SelectedFit {
    pub model: Box<dyn Model>,
    pub optim: OptimResult,
    pub chosen_lambda: f64,
    pub mse_train: f64,
    pub mse_val: f64,
}

impl std::fmt::Debug for SelectedFit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SelectedFit")
            .field("model", &self.model.spec().kind_name())
            .field("chosen_lambda", &self.chosen_lambda)
            .field("mse_train", &self.mse_train)
            .field("mse_val", &self.mse_val)
            .field("optim", &self.optim)
            .finish()
    }
}

impl SelectedFit {
    /// Completes the record once the caller has scored held-out data.
    pub fn into_report(self, tau: f64, mse_test: f64) -> FitReport {
        FitReport {
            tau,
            chosen_lambda: self.chosen_lambda,
            mse_train: self.mse_train,
            mse_val: self.mse_val,
            mse_test,
            converged: self.optim.converged,
            iterations: self.optim.iterations,
            grad_norm: self.optim.grad_norm_final,
            objective: self.optim.f_final,
            model: self.model.spec(),
        }
    }
}

/// Serializable summary of one selected fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub tau: f64,
    pub chosen_lambda: f64,
    pub mse_train: f64,
    pub mse_val: f64,
    pub mse_test: f64,
    pub converged: bool,
    pub iterations: usize,
    pub grad_norm: f64,
    pub objective: f64,
    pub model: ModelSpec,
}

/// Fits one model per grid value on `train`, scores each on `validation`,
/// and keeps the fit with the smallest validation MSE (ties go to the
/// smaller ridge strength).  Grid points whose fit fails are excluded with
/// a warning; if every point fails, the whole search fails.
pub fn fit_with_lambda_search(
    method: &dyn FitMethod,
    train: &Dataset,
    validation: &Dataset,
    tau: f64,
    grid: &[f64],
    opts: &OptimOptions,
) -> Result<SelectedFit, PipelineError> {
    if grid.is_empty() {
        return Err(PipelineError::InvalidConfig(
            "ridge grid must be nonempty".to_string(),
        ));
    }
    if grid.iter().any(|l| !l.is_finite() || *l < 0.0) {
        return Err(PipelineError::InvalidConfig(format!(
            "ridge grid values must be nonnegative reals (got {grid:?})"
        )));
    }
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();

    let mut best: Option<SelectedFit> = None;
    let mut last_error = String::new();
    for &lambda in &grid {
        let fitted = match method.fit(train, tau, lambda, opts) {
            Ok(f) => f,
            Err(err) => {
                log::warn!(
                    "method `{}` failed at lambda = {lambda}: {err}",
                    method.name()
                );
                last_error = err.to_string();
                continue;
            }
        };
        let mse_val = match evaluate_mse(fitted.model.as_ref(), validation) {
            Ok(v) if v.is_finite() => v,
            Ok(v) => {
                log::warn!(
                    "method `{}` at lambda = {lambda} has non-finite validation MSE {v}",
                    method.name()
                );
                last_error = format!("non-finite validation MSE {v}");
                continue;
            }
            Err(err) => return Err(err),
        };
        // Strict improvement keeps the earlier (smaller) lambda on ties.
        if best.as_ref().map_or(true, |b| mse_val < b.mse_val) {
            let mse_train = evaluate_mse(fitted.model.as_ref(), train)?;
            best = Some(SelectedFit {
                model: fitted.model,
                optim: fitted.optim,
                chosen_lambda: lambda,
                mse_train,
                mse_val,
            });
        }
    }

    best.ok_or_else(|| {
        PipelineError::FitFailed(format!(
            "method `{}` failed at every grid point (last error: {last_error})",
            method.name()
        ))
    })
}
