//! Tabular genotype/covariate datasets.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Per-column tag: genotype columns carry minor-allele counts in {0,1,2},
/// covariate columns are unconstrained reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Genotype,
    Covariate,
}

/// A named group of genotype columns (column indices into the dataset).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneGroup {
    pub name: String,
    pub columns: Vec<usize>,
}

/// An immutable design matrix with response vector, column metadata, and an
/// optional grouping of genotype columns into genes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Array2<f64>,
    y: Array1<f64>,
    column_kinds: Vec<ColumnKind>,
    column_names: Vec<String>,
    gene_groups: Option<Vec<GeneGroup>>,
}

fn is_genotype_code(v: f64) -> bool {
    v == 0.0 || v == 1.0 || v == 2.0
}

impl Dataset {
    /// Builds a dataset with auto-generated column names (`snp_1..`, `cov_1..`
    /// numbered within each kind).
    pub fn new(
        x: Array2<f64>,
        y: Array1<f64>,
        column_kinds: Vec<ColumnKind>,
    ) -> Result<Self, ModelError> {
        let mut snp = 0usize;
        let mut cov = 0usize;
        let column_names = column_kinds
            .iter()
            .map(|kind| match kind {
                ColumnKind::Genotype => {
                    snp += 1;
                    format!("snp_{snp}")
                }
                ColumnKind::Covariate => {
                    cov += 1;
                    format!("cov_{cov}")
                }
            })
            .collect();
        Self::with_names(x, y, column_kinds, column_names)
    }

    /// Builds a dataset with explicit column names.
    pub fn with_names(
        x: Array2<f64>,
        y: Array1<f64>,
        column_kinds: Vec<ColumnKind>,
        column_names: Vec<String>,
    ) -> Result<Self, ModelError> {
        let (n, p) = x.dim();
        if n == 0 || p == 0 {
            return Err(ModelError::InvalidDataset(format!(
                "need at least one row and one column (got {n} x {p})"
            )));
        }
        if y.len() != n {
            return Err(ModelError::DimensionMismatch(format!(
                "{n} rows but {} responses",
                y.len()
            )));
        }
        if column_kinds.len() != p {
            return Err(ModelError::DimensionMismatch(format!(
                "{p} columns but {} column kinds",
                column_kinds.len()
            )));
        }
        if column_names.len() != p {
            return Err(ModelError::DimensionMismatch(format!(
                "{p} columns but {} column names",
                column_names.len()
            )));
        }
        for (j, name) in column_names.iter().enumerate() {
            if column_names[..j].contains(name) {
                return Err(ModelError::InvalidDataset(format!(
                    "duplicate column name '{name}'"
                )));
            }
        }
        if let Some(bad) = y.iter().find(|v| !v.is_finite()) {
            return Err(ModelError::InvalidDataset(format!(
                "non-finite response value {bad}"
            )));
        }
        for (j, kind) in column_kinds.iter().enumerate() {
            for (i, &v) in x.column(j).iter().enumerate() {
                if !v.is_finite() {
                    return Err(ModelError::InvalidDataset(format!(
                        "non-finite value {v} at row {i}, column '{}'",
                        column_names[j]
                    )));
                }
                if *kind == ColumnKind::Genotype && !is_genotype_code(v) {
                    return Err(ModelError::InvalidDataset(format!(
                        "genotype column '{}' holds {v} at row {i}; expected 0, 1, or 2",
                        column_names[j]
                    )));
                }
            }
        }
        Ok(Self {
            x,
            y,
            column_kinds,
            column_names,
            gene_groups: None,
        })
    }

    /// Attaches gene groups: disjoint, nonempty sets of genotype-column
    /// indices with unique names.
    pub fn with_gene_groups(mut self, groups: Vec<GeneGroup>) -> Result<Self, ModelError> {
        if groups.is_empty() {
            return Err(ModelError::InvalidGeneGroups("no groups given".to_string()));
        }
        let mut seen = vec![false; self.p()];
        for (g, group) in groups.iter().enumerate() {
            if group.columns.is_empty() {
                return Err(ModelError::InvalidGeneGroups(format!(
                    "gene '{}' has no columns",
                    group.name
                )));
            }
            if groups[..g].iter().any(|other| other.name == group.name) {
                return Err(ModelError::InvalidGeneGroups(format!(
                    "duplicate gene name '{}'",
                    group.name
                )));
            }
            for &col in &group.columns {
                if col >= self.p() {
                    return Err(ModelError::InvalidGeneGroups(format!(
                        "gene '{}' references column {col}, dataset has {}",
                        group.name,
                        self.p()
                    )));
                }
                if self.column_kinds[col] != ColumnKind::Genotype {
                    return Err(ModelError::InvalidGeneGroups(format!(
                        "gene '{}' references non-genotype column '{}'",
                        group.name, self.column_names[col]
                    )));
                }
                if seen[col] {
                    return Err(ModelError::InvalidGeneGroups(format!(
                        "column '{}' appears in more than one gene",
                        self.column_names[col]
                    )));
                }
                seen[col] = true;
            }
        }
        self.gene_groups = Some(groups);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn p(&self) -> usize {
        self.x.ncols()
    }

    pub fn x(&self) -> &Array2<f64> {
        &self.x
    }

    pub fn y(&self) -> &Array1<f64> {
        &self.y
    }

    pub fn column_kinds(&self) -> &[ColumnKind] {
        &self.column_kinds
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn gene_groups(&self) -> Option<&[GeneGroup]> {
        self.gene_groups.as_deref()
    }

    /// The dataset restricted to the given rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self, ModelError> {
        if rows.is_empty() {
            return Err(ModelError::InvalidDataset(
                "row selection is empty".to_string(),
            ));
        }
        if let Some(&bad) = rows.iter().find(|&&r| r >= self.n()) {
            return Err(ModelError::InvalidDataset(format!(
                "row index {bad} out of range for {} rows",
                self.n()
            )));
        }
        let p = self.p();
        let mut x = Array2::zeros((rows.len(), p));
        let mut y = Array1::zeros(rows.len());
        for (i, &r) in rows.iter().enumerate() {
            x.row_mut(i).assign(&self.x.row(r));
            y[i] = self.y[r];
        }
        Ok(Self {
            x,
            y,
            column_kinds: self.column_kinds.clone(),
            column_names: self.column_names.clone(),
            gene_groups: self.gene_groups.clone(),
        })
    }
}
