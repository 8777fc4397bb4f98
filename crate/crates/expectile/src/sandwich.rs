//! Executable risk-bound checks.
//!
//! The excess inner risk of a constant prediction `t` is sandwiched between
//! `min(tau, 1-tau) * (t - t*)^2` and `max(tau, 1-tau) * (t - t*)^2`, where
//! `t*` is the `tau`-expectile.  Integrating over a finite covariate
//! distribution turns the same sandwich into two-sided bounds relating the
//! L2 distance of a predictor from the conditional expectile function to the
//! square root of its excess risk.

use crate::dist::{DiscreteDist, FinitePXY};
use crate::error::ExpectileError;
use crate::level::ExpectileLevel;
use crate::solve::{dist_expectile, inner_risk};

/// Numerical slack allowed when checking the inequalities.
pub const SANDWICH_SLACK: f64 = 1e-9;

/// Pointwise sandwich evaluation: `lower <= excess <= upper` up to slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcessRiskBounds {
    /// The risk minimizer `t*` (the expectile of the distribution).
    pub t_star: f64,
    /// `min(tau, 1-tau) * (t - t*)^2`.
    pub lower: f64,
    /// `R(t) - R(t*)`.
    pub excess: f64,
    /// `max(tau, 1-tau) * (t - t*)^2`.
    pub upper: f64,
    /// Whether both inequalities hold within [`SANDWICH_SLACK`].
    pub holds: bool,
}

/// Evaluates the pointwise excess-risk sandwich for prediction `t` under `dist`.
pub fn excess_risk_bounds(dist: &DiscreteDist, t: f64, level: ExpectileLevel) -> ExcessRiskBounds {
    let t_star = dist_expectile(dist, level);
    let excess = inner_risk(dist, t, level) - inner_risk(dist, t_star, level);
    let gap = (t - t_star) * (t - t_star);
    let lower = level.min_weight() * gap;
    let upper = level.max_weight() * gap;
    let holds = lower <= excess + SANDWICH_SLACK && excess <= upper + SANDWICH_SLACK;
    ExcessRiskBounds {
        t_star,
        lower,
        excess,
        upper,
        holds,
    }
}

/// Integrated sandwich evaluation: `lhs <= l2_dist <= rhs` up to slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L2DistanceBounds {
    /// `sqrt(excess_risk / max(tau, 1-tau))`.
    pub lhs: f64,
    /// `|| f - f* ||_{L2(Px)}`.
    pub l2_dist: f64,
    /// `sqrt(excess_risk / min(tau, 1-tau))`.
    pub rhs: f64,
    /// Integrated excess risk of `f` relative to the expectile function.
    pub excess_risk: f64,
    /// Whether both inequalities hold within [`SANDWICH_SLACK`].
    pub holds: bool,
}

/// Evaluates the integrated sandwich for a predictor given by its values
/// `f` at the covariate points of `joint`.
pub fn l2_distance_bounds(
    joint: &FinitePXY,
    f: &[f64],
    level: ExpectileLevel,
) -> Result<L2DistanceBounds, ExpectileError> {
    if f.len() != joint.len() {
        return Err(ExpectileError::InvalidJoint(format!(
            "predictor has {} values for {} covariate points",
            f.len(),
            joint.len()
        )));
    }
    if let Some(&bad) = f.iter().find(|v| !v.is_finite()) {
        return Err(ExpectileError::NonFiniteSample(bad));
    }

    let mut excess_risk = 0.0;
    let mut sq_dist = 0.0;
    for ((&px, cond), &fi) in joint.x_probs().iter().zip(joint.conditionals()).zip(f) {
        let f_star = dist_expectile(cond, level);
        excess_risk += px * (inner_risk(cond, fi, level) - inner_risk(cond, f_star, level));
        sq_dist += px * (fi - f_star) * (fi - f_star);
    }
    // Tiny negative values can appear from cancellation when f is (nearly)
    // the expectile function itself.
    let excess_clamped = excess_risk.max(0.0);
    let l2_dist = sq_dist.sqrt();
    let lhs = (excess_clamped / level.max_weight()).sqrt();
    let rhs = (excess_clamped / level.min_weight()).sqrt();
    let holds = lhs <= l2_dist + SANDWICH_SLACK && l2_dist <= rhs + SANDWICH_SLACK;
    Ok(L2DistanceBounds {
        lhs,
        l2_dist,
        rhs,
        excess_risk,
        holds,
    })
}
