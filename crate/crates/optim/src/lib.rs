//! Quasi-Newton minimization for the model-fitting crates: dense
//! inverse-Hessian BFGS with a strong Wolfe line search, plus a seeded
//! multi-start wrapper with cheap warmup ranking.

mod bfgs;
mod error;
mod multistart;
mod objective;
mod options;

pub use bfgs::{bfgs_minimize, CURVATURE_SKIP};
pub use error::OptimError;
pub use multistart::{multi_start, multi_start_masked};
pub use objective::{FnObjective, Objective};
pub use options::{OptimOptions, OptimResult};
