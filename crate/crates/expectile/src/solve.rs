//! Expectile solvers and inner risk evaluation.
//!
//! Both solvers iterate the asymmetric-weighted-mean fixed point
//! `t <- sum(w_i y_i) / sum(w_i)` with `w_i = tau` when `y_i >= t` and
//! `1 - tau` otherwise.  The weights only change when the partition of the
//! sample around `t` changes, so the iteration terminates once the partition
//! stabilizes.

use crate::dist::DiscreteDist;
use crate::error::ExpectileError;
use crate::level::ExpectileLevel;
use crate::loss::als_loss;

/// Convergence tolerance for the fixed-point iteration.
pub const SOLVER_TOL: f64 = 1e-10;
/// Iteration cap for the fixed-point iteration.
pub const SOLVER_MAX_ITERS: usize = 200;

/// Expected asymmetric squared loss of the constant prediction `t` under `dist`.
pub fn inner_risk(dist: &DiscreteDist, t: f64, level: ExpectileLevel) -> f64 {
    dist.support()
        .iter()
        .zip(dist.probs())
        .map(|(&y, &p)| p * als_loss(y, t, level))
        .sum()
}

fn weighted_mean_step(values: &[f64], weights: &[f64], t: f64, level: ExpectileLevel) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (&y, &w) in values.iter().zip(weights) {
        let a = w * level.weight(y, t);
        num += a * y;
        den += a;
    }
    num / den
}

fn fixed_point(values: &[f64], weights: &[f64], level: ExpectileLevel) -> f64 {
    // Plain weighted mean as the starting point; it is already the answer at
    // tau = 0.5.
    let mut num = 0.0;
    let mut den = 0.0;
    for (&y, &w) in values.iter().zip(weights) {
        num += w * y;
        den += w * 1.0;
    }
    let mut t = num / den;
    for _ in 0..SOLVER_MAX_ITERS {
        let next = weighted_mean_step(values, weights, t, level);
        if (next - t).abs() <= SOLVER_TOL {
            return next;
        }
        t = next;
    }
    t
}

/// The `tau`-expectile of an empirical sample.
pub fn empirical_expectile(
    samples: &[f64],
    level: ExpectileLevel,
) -> Result<f64, ExpectileError> {
    if samples.is_empty() {
        return Err(ExpectileError::EmptySamples);
    }
    if let Some(&bad) = samples.iter().find(|v| !v.is_finite()) {
        return Err(ExpectileError::NonFiniteSample(bad));
    }
    let weights = vec![1.0; samples.len()];
    Ok(fixed_point(samples, &weights, level))
}

/// The `tau`-expectile of a finite distribution, i.e. the minimizer of
/// [`inner_risk`] in `t`.
pub fn dist_expectile(dist: &DiscreteDist, level: ExpectileLevel) -> f64 {
    fixed_point(dist.support(), dist.probs(), level)
}
