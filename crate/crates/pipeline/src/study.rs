use enn_optim::OptimOptions;
use enn_simgen::{ScenarioRegistry, SimulationSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::PipelineError;
use crate::methods::MethodRegistry;
use crate::metrics::evaluate_mse;
use crate::search::{fit_with_lambda_search, FitReport, DEFAULT_LAMBDA_GRID};
use crate::split::{split, SplitSpec};

/// Optimizer settings sized for replicate studies: enough random starts with
/// short warmups to escape poor basins, capped iterations, and
/// loose-but-sufficient tolerances.
pub fn study_optim_defaults() -> OptimOptions {
    OptimOptions {
        max_iters: 300,
        grad_tol: 1e-5,
        rel_obj_tol: 1e-8,
        n_starts: 10,
        warmup_iters: 10,
        ..OptimOptions::default()
    }
}

fn default_taus() -> Vec<f64> {
    vec![0.5]
}

fn default_methods() -> Vec<String> {
    vec!["er".to_string(), "enn".to_string()]
}

fn default_grid() -> Vec<f64> {
    DEFAULT_LAMBDA_GRID.to_vec()
}

fn default_ratios() -> (f64, f64, f64) {
    (3.0, 1.0, 1.0)
}

fn default_replicates() -> usize {
    100
}

fn default_parallel() -> bool {
    true
}

/// Full description of one Monte Carlo replicate study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub scenario: SimulationSpec,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_taus")]
    pub taus: Vec<f64>,
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    #[serde(default = "default_grid")]
    pub lambda_grid: Vec<f64>,
    #[serde(default = "default_ratios")]
    pub split_ratios: (f64, f64, f64),
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "study_optim_defaults")]
    pub optim: OptimOptions,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
}

impl StudyConfig {
    pub fn new(scenario: SimulationSpec) -> Self {
        Self {
            scenario,
            replicates: default_replicates(),
            taus: default_taus(),
            methods: default_methods(),
            lambda_grid: default_grid(),
            split_ratios: default_ratios(),
            base_seed: 0,
            optim: study_optim_defaults(),
            parallel: default_parallel(),
        }
    }

    fn validate(&self, methods: &MethodRegistry) -> Result<(), PipelineError> {
        self.scenario.validate()?;
        if self.replicates == 0 {
            return Err(PipelineError::InvalidConfig(
                "replicates must be at least 1".to_string(),
            ));
        }
        if self.taus.is_empty() {
            return Err(PipelineError::InvalidConfig(
                "at least one expectile level required".to_string(),
            ));
        }
        if self.taus.iter().any(|t| !(t.is_finite() && *t > 0.0 && *t < 1.0)) {
            return Err(PipelineError::InvalidConfig(format!(
                "expectile levels must lie strictly in (0, 1) (got {:?})",
                self.taus
            )));
        }
        if self.methods.is_empty() {
            return Err(PipelineError::InvalidConfig(
                "at least one fit method required".to_string(),
            ));
        }
        for m in &self.methods {
            methods.resolve(m)?;
        }
        self.optim.validate()?;
        Ok(())
    }
}

/// One (replicate, method, tau) result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub scenario: String,
    pub replicate: usize,
    pub method: String,
    #[serde(flatten)]
    pub report: FitReport,
}

/// A replicate that produced no rows, with the failure reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateFailure {
    pub replicate: usize,
    pub message: String,
}

/// Mean and spread of test MSE per (method, tau) cell over the successful
/// replicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub method: String,
    pub tau: f64,
    pub replicates: usize,
    pub mean_test_mse: f64,
    pub sd_test_mse: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub scenario: String,
    pub replicates_requested: usize,
    pub rows: Vec<StudyRow>,
    pub failures: Vec<ReplicateFailure>,
    pub aggregates: Vec<AggregateRow>,
}

impl StudyReport {
    /// Rows of one (method, tau) cell in replicate order.
    pub fn cell(&self, method: &str, tau: f64) -> Vec<&StudyRow> {
        self.rows
            .iter()
            .filter(|r| r.method == method && r.report.tau == tau)
            .collect()
    }

    pub fn aggregate(&self, method: &str, tau: f64) -> Option<&AggregateRow> {
        self.aggregates
            .iter()
            .find(|a| a.method == method && a.tau == tau)
    }
}

/// Recomputes the per-cell aggregates from result rows.
pub fn aggregate_rows(rows: &[StudyRow]) -> Vec<AggregateRow> {
    let mut cells: Vec<(String, f64)> = Vec::new();
    for row in rows {
        let key = (row.method.clone(), row.report.tau);
        if !cells.contains(&key) {
            cells.push(key);
        }
    }
    cells
        .into_iter()
        .map(|(method, tau)| {
            let mses: Vec<f64> = rows
                .iter()
                .filter(|r| r.method == method && r.report.tau == tau)
                .map(|r| r.report.mse_test)
                .collect();
            let n = mses.len();
            let mean = mses.iter().sum::<f64>() / n as f64;
            let sd = if n > 1 {
                (mses.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / (n - 1) as f64)
                    .sqrt()
            } else {
                0.0
            };
            AggregateRow {
                method,
                tau,
                replicates: n,
                mean_test_mse: mean,
                sd_test_mse: sd,
            }
        })
        .collect()
}

fn run_replicate(
    r: usize,
    config: &StudyConfig,
    methods: &MethodRegistry,
    scenarios: &ScenarioRegistry,
) -> Result<Vec<StudyRow>, PipelineError> {
    let seed = config.base_seed.wrapping_add(r as u64);
    let spec = SimulationSpec {
        seed,
        ..config.scenario.clone()
    };
    let data = scenarios.generate(&spec)?;
    let (train, validation, test) = split(
        &data,
        &SplitSpec {
            ratios: config.split_ratios,
            seed,
        },
    )?;

    let mut rows = Vec::new();
    for name in &config.methods {
        let method = methods.resolve(name)?;
        for &tau in &config.taus {
            let selected = fit_with_lambda_search(
                method,
                &train,
                &validation,
                tau,
                &config.lambda_grid,
                &config.optim,
            )?;
            let mse_test = evaluate_mse(selected.model.as_ref(), &test)?;
            rows.push(StudyRow {
                scenario: config.scenario.scenario.clone(),
                replicate: r,
                method: method.name().to_string(),
                report: selected.into_report(tau, mse_test),
            });
        }
    }
    Ok(rows)
}

/// Runs the replicate study: per replicate r, data is generated at seed
/// `base_seed + r`, split, and fitted per (method, tau) with the ridge
/// search.  Replicate failures are recorded rather than fatal unless more
/// than 10% of replicates fail.  Results are merged in replicate order, so
/// parallel and serial execution produce identical reports.
pub fn run_study(
    config: &StudyConfig,
    methods: &MethodRegistry,
    scenarios: &ScenarioRegistry,
) -> Result<StudyReport, PipelineError> {
    config.validate(methods)?;

    let run_one = |r: usize| match run_replicate(r, config, methods, scenarios) {
        Ok(rows) => Ok(rows),
        Err(err) => Err(ReplicateFailure {
            replicate: r,
            message: err.to_string(),
        }),
    };

    let outcomes: Vec<Result<Vec<StudyRow>, ReplicateFailure>> = if config.parallel {
        (0..config.replicates).into_par_iter().map(run_one).collect()
    } else {
        (0..config.replicates).map(run_one).collect()
    };

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(mut r) => rows.append(&mut r),
            Err(f) => failures.push(f),
        }
    }

    if failures.len() * 10 > config.replicates {
        return Err(PipelineError::StudyFailed(format!(
            "{} of {} replicates failed (first: {})",
            failures.len(),
            config.replicates,
            failures[0].message
        )));
    }

    let aggregates = aggregate_rows(&rows);
    Ok(StudyReport {
        scenario: config.scenario.scenario.clone(),
        replicates_requested: config.replicates,
        rows,
        failures,
        aggregates,
    })
}
