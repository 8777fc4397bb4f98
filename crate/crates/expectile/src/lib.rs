//! Asymmetric squared loss, expectile solvers, and executable risk bounds.
//!
//! The `tau`-expectile of a distribution is the minimizer of the asymmetric
//! squared ("expectile") loss in the prediction argument.  This crate holds
//! the scalar loss and its derivative, fixed-point solvers for empirical and
//! finite-distribution expectiles, and sandwich bounds that relate excess
//! risk to squared distance from the expectile — used as oracles by the
//! model-fitting crates downstream.

mod dist;
mod error;
mod level;
mod loss;
mod sandwich;
mod solve;

pub use dist::{DiscreteDist, FinitePXY};
pub use error::ExpectileError;
pub use level::ExpectileLevel;
pub use loss::{als_loss, als_loss_dt};
pub use sandwich::{
    excess_risk_bounds, l2_distance_bounds, ExcessRiskBounds, L2DistanceBounds, SANDWICH_SLACK,
};
pub use solve::{
    dist_expectile, empirical_expectile, inner_risk, SOLVER_MAX_ITERS, SOLVER_TOL,
};
