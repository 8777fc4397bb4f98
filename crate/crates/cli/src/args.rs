use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Expectile regression and expectile neural networks: simulation,
/// fitting, replicate studies, theory bound checks, and expectile curves.
#[derive(Debug, Parser)]
#[command(name = "enn", version, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic genotype/phenotype dataset as CSV.
    Simulate(SimulateArgs),
    /// Fit one method on a dataset with a ridge-penalty grid search.
    Fit(FitArgs),
    /// Run a seeded Monte Carlo replicate study on a simulation scenario.
    Study(StudyArgs),
    /// Check the expectile risk sandwich bounds on random instances.
    Bounds(BoundsArgs),
    /// Rank the fitted values of a saved model on a dataset.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario name (linear, quadratic, cubic, hyperbolic, mixed, mult2,
    /// thresh2, three_way, no_interaction, gene_gene).
    #[arg(long)]
    pub scenario: String,
    /// Number of samples.
    #[arg(long)]
    pub n: usize,
    /// Number of SNP columns (fixed to 8 for gene_gene).
    #[arg(long)]
    pub p: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minor-allele-frequency range, as `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.05, 0.5])]
    pub maf_range: Vec<f64>,
    /// Share of SNPs entering interaction terms (interaction scenarios).
    #[arg(long, default_value_t = 0.2)]
    pub interaction_fraction: f64,
    /// Output CSV path; a `<stem>.genes.csv` sidecar and a
    /// `<stem>.config.json` echo are written next to it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Clone)]
pub struct OptimArgs {
    /// BFGS iteration cap per start.
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Gradient sup-norm stopping tolerance.
    #[arg(long)]
    pub grad_tol: Option<f64>,
    /// Relative objective-decrease stopping tolerance.
    #[arg(long)]
    pub rel_obj_tol: Option<f64>,
    /// Number of random starts.
    #[arg(long)]
    pub n_starts: Option<usize>,
    /// Warmup iterations per start before the best start continues.
    #[arg(long)]
    pub warmup_iters: Option<usize>,
}

impl OptimArgs {
    /// Applies any explicitly set flags on top of `base`.
    pub fn apply(&self, mut base: enn_optim::OptimOptions) -> enn_optim::OptimOptions {
        if let Some(v) = self.max_iters {
            base.max_iters = v;
        }
        if let Some(v) = self.grad_tol {
            base.grad_tol = v;
        }
        if let Some(v) = self.rel_obj_tol {
            base.rel_obj_tol = v;
        }
        if let Some(v) = self.n_starts {
            base.n_starts = v;
        }
        if let Some(v) = self.warmup_iters {
            base.warmup_iters = v;
        }
        base
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Input dataset CSV (`y`, `snp_*`, `cov_*` columns).
    #[arg(long)]
    pub data: PathBuf,
    /// Gene map sidecar CSV (`column_name,gene`); defaults to
    /// `<data stem>.genes.csv` when that file exists.
    #[arg(long)]
    pub genes: Option<PathBuf>,
    /// Fit method: er, enn, or enn_masked.
    #[arg(long, default_value = "er")]
    pub method: String,
    /// Expectile levels to fit, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5])]
    pub taus: Vec<f64>,
    /// Ridge penalty grid searched on the validation split.
    #[arg(long, value_delimiter = ',', default_values_t = enn_pipeline::DEFAULT_LAMBDA_GRID)]
    pub lambda_grid: Vec<f64>,
    /// Hidden width of the fully connected network.
    #[arg(long, default_value_t = enn_pipeline::DEFAULT_HIDDEN)]
    pub hidden: usize,
    /// Hidden nodes per gene block of the masked network.
    #[arg(long, default_value_t = enn_pipeline::DEFAULT_PER_GENE_HIDDEN)]
    pub per_gene_hidden: usize,
    /// Hidden activation (relu, tanh, sigmoid, identity).
    #[arg(long, default_value = "relu")]
    pub hidden_act: String,
    /// Output activation (identity, relu, tanh, sigmoid).
    #[arg(long, default_value = "identity")]
    pub output_act: String,
    /// Standardize input columns on the training split.
    #[arg(long)]
    pub standardize: bool,
    /// Train/validation/test ratio, as `a,b,c`.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [3.0, 1.0, 1.0])]
    pub split_ratios: Vec<f64>,
    /// Seed of the split shuffle.
    #[arg(long, default_value_t = 0)]
    pub split_seed: u64,
    #[command(flatten)]
    pub optim: OptimArgs,
    /// Output directory (report.json, summary.csv, model_tau_*.json,
    /// config.json).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// Study config JSON; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Simulation scenario name.
    #[arg(long, required_unless_present = "config")]
    pub scenario: Option<String>,
    /// Samples per replicate.
    #[arg(long)]
    pub n: Option<usize>,
    /// SNP columns per replicate.
    #[arg(long)]
    pub p: Option<usize>,
    /// Minor-allele-frequency range, as `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub maf_range: Option<Vec<f64>>,
    /// Share of SNPs entering interaction terms.
    #[arg(long)]
    pub interaction_fraction: Option<f64>,
    /// Number of replicates (desk-scale default: 100).
    #[arg(long, conflicts_with = "full")]
    pub replicates: Option<usize>,
    /// Full-scale run: 1000 replicates.
    #[arg(long)]
    pub full: bool,
    /// Methods to compare, comma separated (er, enn, enn_masked).
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
    /// Expectile levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub taus: Option<Vec<f64>>,
    /// Ridge penalty grid.
    #[arg(long, value_delimiter = ',')]
    pub lambda_grid: Option<Vec<f64>>,
    /// Train/validation/test ratio, as `a,b,c`.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub split_ratios: Option<Vec<f64>>,
    /// Replicate r uses seed base_seed + r.
    #[arg(long)]
    pub base_seed: Option<u64>,
    /// Run replicates sequentially instead of in parallel.
    #[arg(long)]
    pub serial: bool,
    #[command(flatten)]
    pub optim: OptimArgs,
    /// Output directory (replicates.csv, aggregate.csv, plot_data.csv,
    /// report.json, config.json).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Number of random instances per bound.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Expectile levels exercised per trial.
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99])]
    pub taus: Vec<f64>,
    /// Optional JSON report path (stdout summary is always printed).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Saved model JSON (from `enn fit`).
    #[arg(long)]
    pub model: PathBuf,
    /// Dataset CSV whose rows are scored and ranked.
    #[arg(long)]
    pub data: PathBuf,
    /// Gene map sidecar CSV; defaults to `<data stem>.genes.csv` if present.
    #[arg(long)]
    pub genes: Option<PathBuf>,
    /// Output CSV path (rank, expectile).
    #[arg(long)]
    pub out: PathBuf,
}
