use std::io::Write;

use crate::error::PipelineError;
use crate::study::{AggregateRow, StudyReport, StudyRow};

/// Fixed column order of the per-row result table.
pub const ROW_COLUMNS: [&str; 10] = [
    "scenario",
    "replicate",
    "method",
    "tau",
    "lambda",
    "mse_train",
    "mse_val",
    "mse_test",
    "converged",
    "iterations",
];

/// Writes the per-(replicate, method, tau) rows as CSV in [`ROW_COLUMNS`]
/// order.
pub fn write_rows_csv<W: Write>(out: W, rows: &[StudyRow]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ROW_COLUMNS)?;
    for row in rows {
        let r = &row.report;
        w.write_record(&[
            row.scenario.clone(),
            row.replicate.to_string(),
            row.method.clone(),
            r.tau.to_string(),
            r.chosen_lambda.to_string(),
            r.mse_train.to_string(),
            r.mse_val.to_string(),
            r.mse_test.to_string(),
            r.converged.to_string(),
            r.iterations.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the per-(method, tau) aggregate table as CSV.
pub fn write_aggregates_csv<W: Write>(
    out: W,
    scenario: &str,
    aggregates: &[AggregateRow],
) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "scenario",
        "method",
        "tau",
        "replicates",
        "mean_test_mse",
        "sd_test_mse",
    ])?;
    for a in aggregates {
        w.write_record(&[
            scenario.to_string(),
            a.method.clone(),
            a.tau.to_string(),
            a.replicates.to_string(),
            a.mean_test_mse.to_string(),
            a.sd_test_mse.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a ranked expectile curve as CSV with columns rank, expectile.
pub fn write_curve_csv<W: Write>(out: W, curve: &[(usize, f64)]) -> Result<(), PipelineError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "expectile"])?;
    for (rank, value) in curve {
        w.write_record(&[rank.to_string(), value.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Full study report as pretty JSON (stable field order, round-trip-exact
/// floats).
pub fn study_to_json(report: &StudyReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

impl From<csv::Error> for PipelineError {
    fn from(err: csv::Error) -> Self {
        PipelineError::StudyFailed(format!("csv write failed: {err}"))
    }
}
