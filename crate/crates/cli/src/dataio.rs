//! Dataset, gene-map, and model file formats.
//!
//! A dataset is a UTF-8 CSV with header `y` followed by feature columns;
//! `snp_*` columns hold genotype codes 0/1/2 and `cov_*` columns hold
//! reals.  Gene groupings live in a sidecar CSV with columns
//! `column_name,gene`, found by default at `<data stem>.genes.csv`.
//! Models are the JSON documents produced by [`ModelFile::to_json`].

use std::fs;
use std::path::{Path, PathBuf};

use enn_models::{ColumnKind, Dataset, GeneGroup, Model, ModelFile};
use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::error::{io_err, CliError};

/// The gene-map sidecar path conventionally paired with a dataset path.
pub fn genes_sidecar_path(data: &Path) -> PathBuf {
    data.with_extension("genes.csv")
}

/// The resolved-config echo path conventionally paired with an output file.
pub fn config_echo_path(out: &Path) -> PathBuf {
    out.with_extension("config.json")
}

pub fn write_dataset(path: &Path, data: &Dataset) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    let mut header = Vec::with_capacity(data.p() + 1);
    header.push("y".to_string());
    header.extend(data.column_names().iter().cloned());
    w.write_record(&header).map_err(csv_err)?;
    for i in 0..data.n() {
        let mut record = Vec::with_capacity(data.p() + 1);
        record.push(data.y()[i].to_string());
        for j in 0..data.p() {
            record.push(data.x()[[i, j]].to_string());
        }
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(|e| io_err("flush failed", e))?;
    Ok(())
}

pub fn write_gene_map(path: &Path, data: &Dataset) -> Result<(), CliError> {
    let groups = data.gene_groups().ok_or_else(|| {
        CliError::Data("dataset has no gene groupings to write".to_string())
    })?;
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    w.write_record(["column_name", "gene"]).map_err(csv_err)?;
    for group in groups {
        for &col in &group.columns {
            w.write_record([&data.column_names()[col], &group.name])
                .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| io_err("flush failed", e))?;
    Ok(())
}

/// Reads a dataset CSV, attaching gene groups from `genes` when given or
/// from the conventional sidecar when it exists.
pub fn read_dataset(path: &Path, genes: Option<&Path>) -> Result<Dataset, CliError> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let header = r.headers().map_err(csv_err)?.clone();
    if header.is_empty() || &header[0] != "y" {
        return Err(CliError::Data(format!(
            "{}: first column must be `y` (got `{}`)",
            path.display(),
            header.iter().next().unwrap_or("")
        )));
    }
    let mut kinds = Vec::new();
    let mut names = Vec::new();
    for name in header.iter().skip(1) {
        let kind = if name.starts_with("snp_") {
            ColumnKind::Genotype
        } else if name.starts_with("cov_") {
            ColumnKind::Covariate
        } else {
            return Err(CliError::Data(format!(
                "{}: column `{name}` must be named snp_* or cov_*",
                path.display()
            )));
        };
        kinds.push(kind);
        names.push(name.to_string());
    }
    let p = names.len();
    if p == 0 {
        return Err(CliError::Data(format!(
            "{}: no feature columns",
            path.display()
        )));
    }

    let mut ys = Vec::new();
    let mut xs = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        if record.len() != p + 1 {
            return Err(CliError::Data(format!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                i + 1,
                record.len(),
                p + 1
            )));
        }
        for (j, field) in record.iter().enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| {
                CliError::Data(format!(
                    "{}: row {}, column `{}`: `{field}` is not a number",
                    path.display(),
                    i + 1,
                    if j == 0 { "y" } else { &names[j - 1] }
                ))
            })?;
            if j == 0 {
                ys.push(v);
            } else {
                xs.push(v);
            }
        }
    }
    if ys.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    let n = ys.len();
    let x = Array2::from_shape_vec((n, p), xs).expect("shape checked per row");
    let data = Dataset::with_names(x, Array1::from_vec(ys), kinds, names)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;

    let sidecar = genes_sidecar_path(path);
    let genes_path = match genes {
        Some(g) => Some(g.to_path_buf()),
        None if sidecar.is_file() => Some(sidecar),
        None => None,
    };
    match genes_path {
        Some(g) => {
            let groups = read_gene_map(&g, &data)?;
            data.with_gene_groups(groups)
                .map_err(|e| CliError::Data(format!("{}: {e}", g.display())))
        }
        None => Ok(data),
    }
}

/// Reads a `column_name,gene` map, resolving names against `data`'s
/// columns.  Groups keep first-appearance order.
pub fn read_gene_map(path: &Path, data: &Dataset) -> Result<Vec<GeneGroup>, CliError> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let header = r.headers().map_err(csv_err)?;
    if header.len() != 2 || &header[0] != "column_name" || &header[1] != "gene" {
        return Err(CliError::Data(format!(
            "{}: expected header `column_name,gene`",
            path.display()
        )));
    }
    let mut groups: Vec<GeneGroup> = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let column = record.get(0).unwrap_or("").trim().to_string();
        let gene = record.get(1).unwrap_or("").trim().to_string();
        if column.is_empty() || gene.is_empty() {
            return Err(CliError::Data(format!(
                "{}: row {} needs both a column name and a gene name",
                path.display(),
                i + 1
            )));
        }
        let col = data
            .column_names()
            .iter()
            .position(|n| *n == column)
            .ok_or_else(|| {
                CliError::Data(format!(
                    "{}: unknown dataset column `{column}`",
                    path.display()
                ))
            })?;
        match groups.iter_mut().find(|g| g.name == gene) {
            Some(g) => g.columns.push(col),
            None => groups.push(GeneGroup {
                name: gene,
                columns: vec![col],
            }),
        }
    }
    if groups.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no gene rows",
            path.display()
        )));
    }
    Ok(groups)
}

pub fn save_model(path: &Path, file: &ModelFile) -> Result<(), CliError> {
    fs::write(path, file.to_json())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn load_model(path: &Path) -> Result<(ModelFile, Box<dyn Model>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let file = ModelFile::from_json(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let model = file
        .model
        .build()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok((file, model))
}

/// Writes the resolved-config echo: the full parameter set that determines
/// the command's outputs.
pub fn write_config_echo<T: Serialize>(path: &Path, config: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(config)
        .map_err(|e| CliError::Run(format!("config echo serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn csv_err(err: csv::Error) -> CliError {
    CliError::Data(err.to_string())
}
