//! Experiment orchestration: dataset splitting, ridge-grid model fitting,
//! MSE evaluation, ranked expectile curves, and seeded Monte Carlo
//! replicate studies whose parallel and serial runs produce identical
//! reports.

mod error;
mod methods;
mod metrics;
mod report;
mod search;
mod split;
mod study;

pub use error::PipelineError;
pub use methods::{
    EnnMethod, ErMethod, FitMethod, FittedModel, MethodRegistry, DEFAULT_HIDDEN,
    DEFAULT_PER_GENE_HIDDEN,
};
pub use metrics::{evaluate_mse, ranked_expectile_curve};
pub use report::{
    study_to_json, write_aggregates_csv, write_curve_csv, write_rows_csv, ROW_COLUMNS,
};
pub use search::{fit_with_lambda_search, FitReport, SelectedFit, DEFAULT_LAMBDA_GRID};
pub use split::{split, split_indices, SplitSpec};
pub use study::{
    aggregate_rows, run_study, study_optim_defaults, AggregateRow, ReplicateFailure, StudyConfig,
    StudyReport, StudyRow,
};
