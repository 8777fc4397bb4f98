use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use enn_expectile::{
    dist_expectile, excess_risk_bounds, l2_distance_bounds, DiscreteDist, ExpectileLevel,
    FinitePXY, SANDWICH_SLACK,
};
use enn_models::{Activation, ModelFile};
use enn_optim::OptimOptions;
use enn_pipeline::{
    evaluate_mse, fit_with_lambda_search, ranked_expectile_curve, run_study, split,
    study_optim_defaults, write_aggregates_csv, write_curve_csv, write_rows_csv, EnnMethod,
    ErMethod, FitMethod, FitReport, MethodRegistry, SplitSpec, StudyConfig, StudyReport,
};
use enn_simgen::{ScenarioRegistry, SimulationSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{BoundsArgs, CurveArgs, FitArgs, SimulateArgs, StudyArgs};
use crate::dataio::{
    config_echo_path, genes_sidecar_path, load_model, read_dataset, save_model,
    write_config_echo, write_dataset, write_gene_map,
};
use crate::error::{io_err, CliError};

fn pair(values: &[f64], what: &str) -> Result<(f64, f64), CliError> {
    match values {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::Usage(format!("{what} needs exactly two values"))),
    }
}

fn triple(values: &[f64], what: &str) -> Result<(f64, f64, f64), CliError> {
    match values {
        [a, b, c] => Ok((*a, *b, *c)),
        _ => Err(CliError::Usage(format!("{what} needs exactly three values"))),
    }
}

fn ensure_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|e| io_err("cannot create output directory", e))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let spec = SimulationSpec {
        scenario: args.scenario.clone(),
        n: args.n,
        p: args.p,
        maf_range: pair(&args.maf_range, "--maf-range")?,
        interaction_fraction: args.interaction_fraction,
        seed: args.seed,
    };
    let scenarios = ScenarioRegistry::builtin();
    let data = scenarios.generate(&spec)?;

    write_dataset(&args.out, &data)?;
    let mut outputs = vec![args.out.display().to_string()];
    if data.gene_groups().is_some() {
        let sidecar = genes_sidecar_path(&args.out);
        write_gene_map(&sidecar, &data)?;
        outputs.push(sidecar.display().to_string());
    }

    #[derive(Serialize)]
    struct Echo<'a> {
        command: &'a str,
        spec: &'a SimulationSpec,
        out: String,
    }
    let echo_path = config_echo_path(&args.out);
    write_config_echo(
        &echo_path,
        &Echo {
            command: "simulate",
            spec: &spec,
            out: args.out.display().to_string(),
        },
    )?;
    outputs.push(echo_path.display().to_string());

    println!(
        "wrote {} rows x {} columns: {}",
        data.n(),
        data.p() + 1,
        outputs.join(", ")
    );
    Ok(())
}

fn parse_activation(name: &str, what: &str) -> Result<Activation, CliError> {
    Activation::from_str(name)
        .map_err(|_| CliError::Usage(format!("{what}: unknown activation `{name}`")))
}

/// Builds the single method selected by `enn fit` flags.
fn build_method(args: &FitArgs) -> Result<Box<dyn FitMethod>, CliError> {
    let hidden_act = parse_activation(&args.hidden_act, "--hidden-act")?;
    let output_act = parse_activation(&args.output_act, "--output-act")?;
    match args.method.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "er" => Ok(Box::new(ErMethod::new().with_standardize(args.standardize))),
        "enn" | "enn_full" => Ok(Box::new(
            EnnMethod::fully_connected(args.hidden)
                .with_activations(hidden_act, output_act)
                .with_standardize(args.standardize),
        )),
        "enn_masked" | "masked" => Ok(Box::new(
            EnnMethod::gene_masked(args.per_gene_hidden)
                .with_activations(hidden_act, output_act)
                .with_standardize(args.standardize),
        )),
        other => Err(CliError::Usage(format!(
            "unknown fit method `{other}` (expected er, enn, or enn_masked)"
        ))),
    }
}

pub fn cmd_fit(args: &FitArgs) -> Result<(), CliError> {
    if args.taus.is_empty() {
        return Err(CliError::Usage("--taus needs at least one level".to_string()));
    }
    let data = read_dataset(&args.data, args.genes.as_deref())?;
    let method = build_method(args)?;
    let ratios = triple(&args.split_ratios, "--split-ratios")?;
    let optim = args.optim.apply(OptimOptions::default());
    optim
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let (train, validation, test) = split(
        &data,
        &SplitSpec {
            ratios,
            seed: args.split_seed,
        },
    )?;

    ensure_dir(&args.out)?;
    let mut reports: Vec<FitReport> = Vec::new();
    for &tau in &args.taus {
        let selected = fit_with_lambda_search(
            method.as_ref(),
            &train,
            &validation,
            tau,
            &args.lambda_grid,
            &optim,
        )?;
        let mse_test = evaluate_mse(selected.model.as_ref(), &test)?;
        let report = selected.into_report(tau, mse_test);
        let model_path = args.out.join(format!("model_tau_{tau}.json"));
        save_model(
            &model_path,
            &ModelFile::new(tau, report.chosen_lambda, report.model.clone()),
        )?;
        println!(
            "tau={tau}: lambda={} train={:.6} val={:.6} test={:.6} ({})",
            report.chosen_lambda,
            report.mse_train,
            report.mse_val,
            report.mse_test,
            model_path.display()
        );
        reports.push(report);
    }

    #[derive(Serialize)]
    struct ReportDoc<'a> {
        method: &'a str,
        n: usize,
        p: usize,
        reports: &'a [FitReport],
    }
    let mut report_json = serde_json::to_string_pretty(&ReportDoc {
        method: method.name(),
        n: data.n(),
        p: data.p(),
        reports: &reports,
    })
    .map_err(|e| CliError::Run(format!("report serialization failed: {e}")))?;
    report_json.push('\n');
    fs::write(args.out.join("report.json"), report_json)
        .map_err(|e| io_err("cannot write report.json", e))?;

    let summary = fs::File::create(args.out.join("summary.csv"))
        .map_err(|e| io_err("cannot write summary.csv", e))?;
    let mut w = csv::Writer::from_writer(summary);
    w.write_record([
        "method",
        "tau",
        "lambda",
        "mse_train",
        "mse_val",
        "mse_test",
        "converged",
        "iterations",
    ])
    .map_err(|e| CliError::Run(e.to_string()))?;
    for r in &reports {
        w.write_record(&[
            method.name().to_string(),
            r.tau.to_string(),
            r.chosen_lambda.to_string(),
            r.mse_train.to_string(),
            r.mse_val.to_string(),
            r.mse_test.to_string(),
            r.converged.to_string(),
            r.iterations.to_string(),
        ])
        .map_err(|e| CliError::Run(e.to_string()))?;
    }
    w.flush().map_err(|e| io_err("flush failed", e))?;

    #[derive(Serialize)]
    struct Echo<'a> {
        command: &'a str,
        data: String,
        genes: Option<String>,
        method: &'a str,
        taus: &'a [f64],
        lambda_grid: &'a [f64],
        hidden: usize,
        per_gene_hidden: usize,
        hidden_act: String,
        output_act: String,
        standardize: bool,
        split_ratios: (f64, f64, f64),
        split_seed: u64,
        optim: &'a OptimOptions,
    }
    write_config_echo(
        &args.out.join("config.json"),
        &Echo {
            command: "fit",
            data: args.data.display().to_string(),
            genes: args.genes.as_ref().map(|g| g.display().to_string()),
            method: method.name(),
            taus: &args.taus,
            lambda_grid: &args.lambda_grid,
            hidden: args.hidden,
            per_gene_hidden: args.per_gene_hidden,
            hidden_act: args.hidden_act.clone(),
            output_act: args.output_act.clone(),
            standardize: args.standardize,
            split_ratios: ratios,
            split_seed: args.split_seed,
            optim: &optim,
        },
    )?;
    Ok(())
}

/// Resolves the study config from an optional file plus flag overrides.
fn resolve_study_config(args: &StudyArgs) -> Result<StudyConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<StudyConfig>(&text)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?
        }
        None => {
            let scenario = args.scenario.as_deref().expect("clap enforces presence");
            let mut config = StudyConfig::new(SimulationSpec::new(
                scenario,
                args.n.unwrap_or(500),
                args.p.unwrap_or(50),
                0,
            ));
            config.optim = study_optim_defaults();
            config
        }
    };

    if let Some(s) = &args.scenario {
        config.scenario.scenario = s.clone();
    }
    if let Some(n) = args.n {
        config.scenario.n = n;
    }
    if let Some(p) = args.p {
        config.scenario.p = p;
    }
    if let Some(range) = &args.maf_range {
        config.scenario.maf_range = pair(range, "--maf-range")?;
    }
    if let Some(f) = args.interaction_fraction {
        config.scenario.interaction_fraction = f;
    }
    if args.full {
        config.replicates = 1000;
    } else if let Some(r) = args.replicates {
        config.replicates = r;
    }
    if let Some(m) = &args.methods {
        config.methods = m.clone();
    }
    if let Some(t) = &args.taus {
        config.taus = t.clone();
    }
    if let Some(g) = &args.lambda_grid {
        config.lambda_grid = g.clone();
    }
    if let Some(r) = &args.split_ratios {
        config.split_ratios = triple(r, "--split-ratios")?;
    }
    if let Some(s) = args.base_seed {
        config.base_seed = s;
    }
    if args.serial {
        config.parallel = false;
    }
    config.optim = args.optim.apply(config.optim.clone());
    Ok(config)
}

/// Wide plot table: one row per tau, one mean-test-MSE column per method.
fn write_plot_data<W: std::io::Write>(
    out: W,
    config: &StudyConfig,
    report: &StudyReport,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["tau".to_string()];
    header.extend(config.methods.iter().cloned());
    w.write_record(&header).map_err(|e| CliError::Run(e.to_string()))?;
    for &tau in &config.taus {
        let mut record = vec![tau.to_string()];
        for method in &config.methods {
            let cell = report
                .aggregate(method, tau)
                .map(|a| a.mean_test_mse.to_string())
                .unwrap_or_default();
            record.push(cell);
        }
        w.write_record(&record).map_err(|e| CliError::Run(e.to_string()))?;
    }
    w.flush().map_err(|e| io_err("flush failed", e))?;
    Ok(())
}

pub fn cmd_study(args: &StudyArgs) -> Result<(), CliError> {
    let config = resolve_study_config(args)?;
    let methods = MethodRegistry::builtin();
    let scenarios = ScenarioRegistry::builtin();

    let report = run_study(&config, &methods, &scenarios)?;

    ensure_dir(&args.out)?;
    let rows_file = fs::File::create(args.out.join("replicates.csv"))
        .map_err(|e| io_err("cannot write replicates.csv", e))?;
    write_rows_csv(rows_file, &report.rows)?;

    let agg_file = fs::File::create(args.out.join("aggregate.csv"))
        .map_err(|e| io_err("cannot write aggregate.csv", e))?;
    write_aggregates_csv(agg_file, &report.scenario, &report.aggregates)?;

    let plot_file = fs::File::create(args.out.join("plot_data.csv"))
        .map_err(|e| io_err("cannot write plot_data.csv", e))?;
    write_plot_data(plot_file, &config, &report)?;

    fs::write(
        args.out.join("report.json"),
        enn_pipeline::study_to_json(&report),
    )
    .map_err(|e| io_err("cannot write report.json", e))?;

    write_config_echo(&args.out.join("config.json"), &config)?;

    for a in &report.aggregates {
        println!(
            "{} {} tau={}: mean test MSE {:.6} (sd {:.6}, {} replicates)",
            report.scenario, a.method, a.tau, a.mean_test_mse, a.sd_test_mse, a.replicates
        );
    }
    if !report.failures.is_empty() {
        eprintln!(
            "warning: {} of {} replicates failed (first: {})",
            report.failures.len(),
            config.replicates,
            report.failures[0].message
        );
    }
    Ok(())
}

/// One random finite distribution: 2..=8 support points in [-5, 5].
fn random_dist(rng: &mut ChaCha8Rng) -> DiscreteDist {
    let k = rng.random_range(2..=8);
    let support: Vec<f64> = (0..k).map(|_| rng.random_range(-5.0..5.0)).collect();
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let probs: Vec<f64> = raw.iter().map(|w| w / total).collect();
    DiscreteDist::new(support, probs).expect("generated distribution is valid")
}

#[derive(Serialize)]
struct BoundsReport {
    trials: usize,
    seed: u64,
    taus: Vec<f64>,
    checks_per_bound: usize,
    pointwise_passes: usize,
    integrated_passes: usize,
    worst_pointwise_margin: f64,
    worst_integrated_margin: f64,
    violations: usize,
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<(), CliError> {
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".to_string()));
    }
    let levels: Vec<ExpectileLevel> = args
        .taus
        .iter()
        .map(|&tau| ExpectileLevel::new(tau).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut pointwise_passes = 0usize;
    let mut integrated_passes = 0usize;
    // Most negative sandwich margin seen; a margin below -SANDWICH_SLACK is
    // a violation.
    let mut worst_pointwise = f64::INFINITY;
    let mut worst_integrated = f64::INFINITY;
    let mut violations = 0usize;

    for _ in 0..args.trials {
        let dist = random_dist(&mut rng);
        let t = rng.random_range(-6.0..6.0);
        let mut ok = true;
        for &level in &levels {
            let b = excess_risk_bounds(&dist, t, level);
            worst_pointwise = worst_pointwise.min(b.excess - b.lower).min(b.upper - b.excess);
            ok &= b.holds;
        }
        if ok {
            pointwise_passes += 1;
        } else {
            violations += 1;
        }

        let m = rng.random_range(2..=5);
        let x_points: Vec<Vec<f64>> = (0..m).map(|j| vec![j as f64]).collect();
        let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let x_probs: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let conditionals: Vec<DiscreteDist> = (0..m).map(|_| random_dist(&mut rng)).collect();
        let joint = FinitePXY::new(x_points, x_probs, conditionals)
            .expect("generated joint is valid");
        let mut ok = true;
        for &level in &levels {
            let f: Vec<f64> = joint
                .conditionals()
                .iter()
                .map(|c| dist_expectile(c, level) + rng.random_range(-2.0..2.0))
                .collect();
            let b = l2_distance_bounds(&joint, &f, level)
                .map_err(|e| CliError::Run(e.to_string()))?;
            worst_integrated = worst_integrated.min(b.l2_dist - b.lhs).min(b.rhs - b.l2_dist);
            ok &= b.holds;
        }
        if ok {
            integrated_passes += 1;
        } else {
            violations += 1;
        }
    }

    let report = BoundsReport {
        trials: args.trials,
        seed: args.seed,
        taus: args.taus.clone(),
        checks_per_bound: args.trials * levels.len(),
        pointwise_passes,
        integrated_passes,
        worst_pointwise_margin: worst_pointwise,
        worst_integrated_margin: worst_integrated,
        violations,
    };
    println!(
        "config: trials={} seed={} taus={:?}",
        report.trials, report.seed, report.taus
    );
    println!(
        "pointwise sandwich: {}/{} trials pass, worst margin {:+.3e}",
        report.pointwise_passes, report.trials, report.worst_pointwise_margin
    );
    println!(
        "integrated sandwich: {}/{} trials pass, worst margin {:+.3e}",
        report.integrated_passes, report.trials, report.worst_integrated_margin
    );
    if let Some(out) = &args.out {
        let mut text = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Run(format!("report serialization failed: {e}")))?;
        text.push('\n');
        fs::write(out, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
    }
    if report.violations > 0 {
        return Err(CliError::Bounds(format!(
            "{} of {} trials violated a bound beyond tolerance {SANDWICH_SLACK:e}",
            report.violations, report.trials
        )));
    }
    Ok(())
}

pub fn cmd_curve(args: &CurveArgs) -> Result<(), CliError> {
    let (file, model) = load_model(&args.model)?;
    let data = read_dataset(&args.data, args.genes.as_deref())?;
    if model.input_dim() != data.p() {
        return Err(CliError::Data(format!(
            "model expects {} inputs, dataset has {} feature columns",
            model.input_dim(),
            data.p()
        )));
    }
    let curve = ranked_expectile_curve(model.as_ref(), &data)?;
    let out = fs::File::create(&args.out)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", args.out.display())))?;
    let mut out = std::io::BufWriter::new(out);
    write_curve_csv(&mut out, &curve)?;
    out.flush().map_err(|e| io_err("flush failed", e))?;

    #[derive(Serialize)]
    struct Echo<'a> {
        command: &'a str,
        model: String,
        data: String,
        tau: f64,
        lambda: f64,
        out: String,
    }
    write_config_echo(
        &config_echo_path(&args.out),
        &Echo {
            command: "curve",
            model: args.model.display().to_string(),
            data: args.data.display().to_string(),
            tau: file.tau,
            lambda: file.lambda,
            out: args.out.display().to_string(),
        },
    )?;
    println!("wrote {} ranked fitted values: {}", curve.len(), args.out.display());
    Ok(())
}
