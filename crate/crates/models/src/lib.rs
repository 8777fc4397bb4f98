//! Model layer: datasets, linear expectile regression, and the expectile
//! neural network with its connectivity-masked variant.
//!
//! The network is a single hidden layer.  Input-to-hidden connections can be
//! restricted by a boolean mask (e.g. the per-gene block mask from
//! [`gene_mask`]); masked weights and their gradients are exactly 0, so any
//! gradient-based update leaves them untouched.  The penalized risk is the
//! mean asymmetric squared loss plus a ridge penalty on connection weights
//! (biases exempt).

mod activation;
mod arch;
mod data;
mod enn;
mod er;
mod error;
mod model;
mod params;
mod scale;

pub use activation::Activation;
pub use arch::{gene_mask, EnnArchitecture};
pub use data::{ColumnKind, Dataset, GeneGroup};
pub use enn::{enn_forward, enn_grad, enn_risk, enn_risk_flat, enn_value_grad_flat};
pub use er::{er_grad, er_predict, er_risk, er_risk_flat, er_value_grad_flat};
pub use error::ModelError;
pub use model::{EnnModel, ErModel, Model, ModelFile, ModelSpec};
pub use params::{EnnParams, FlatLayout};
pub use scale::ColumnScaler;
