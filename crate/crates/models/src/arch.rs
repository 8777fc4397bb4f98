//! Network architecture: node counts, activations, penalty weight, and the
//! input-to-hidden connectivity mask.

use serde::{Deserialize, Serialize};

use crate::activation::Activation;
use crate::data::GeneGroup;
use crate::error::ModelError;

/// Single-hidden-layer architecture.  The mask has one row per input column
/// and one column per hidden node; `true` means the connection exists.
/// Weights on masked-out connections are pinned to exactly 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ArchFields", into = "ArchFields")]
pub struct EnnArchitecture {
    p_in: usize,
    q_hidden: usize,
    hidden_act: Activation,
    output_act: Activation,
    mask: Vec<Vec<bool>>,
    lambda: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArchFields {
    p_in: usize,
    q_hidden: usize,
    hidden_act: Activation,
    output_act: Activation,
    mask: Vec<Vec<bool>>,
    lambda: f64,
}

impl TryFrom<ArchFields> for EnnArchitecture {
    type Error = ModelError;

    fn try_from(f: ArchFields) -> Result<Self, Self::Error> {
        EnnArchitecture::with_mask(
            f.p_in,
            f.q_hidden,
            f.hidden_act,
            f.output_act,
            f.mask,
            f.lambda,
        )
    }
}

impl From<EnnArchitecture> for ArchFields {
    fn from(a: EnnArchitecture) -> Self {
        ArchFields {
            p_in: a.p_in,
            q_hidden: a.q_hidden,
            hidden_act: a.hidden_act,
            output_act: a.output_act,
            mask: a.mask,
            lambda: a.lambda,
        }
    }
}

impl EnnArchitecture {
    /// All-true mask: every input feeds every hidden node.
    pub fn fully_connected(
        p_in: usize,
        q_hidden: usize,
        hidden_act: Activation,
        output_act: Activation,
        lambda: f64,
    ) -> Result<Self, ModelError> {
        let mask = vec![vec![true; q_hidden]; p_in];
        Self::with_mask(p_in, q_hidden, hidden_act, output_act, mask, lambda)
    }

    pub fn with_mask(
        p_in: usize,
        q_hidden: usize,
        hidden_act: Activation,
        output_act: Activation,
        mask: Vec<Vec<bool>>,
        lambda: f64,
    ) -> Result<Self, ModelError> {
        if p_in == 0 || q_hidden == 0 {
            return Err(ModelError::InvalidArchitecture(format!(
                "need p_in >= 1 and q_hidden >= 1 (got {p_in}, {q_hidden})"
            )));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(ModelError::InvalidArchitecture(format!(
                "lambda must be a nonnegative real (got {lambda})"
            )));
        }
        if mask.len() != p_in || mask.iter().any(|row| row.len() != q_hidden) {
            return Err(ModelError::InvalidArchitecture(format!(
                "mask must be {p_in} x {q_hidden}"
            )));
        }
        for q in 0..q_hidden {
            if !mask.iter().any(|row| row[q]) {
                return Err(ModelError::InvalidArchitecture(format!(
                    "hidden node {q} has no incoming connections"
                )));
            }
        }
        Ok(Self {
            p_in,
            q_hidden,
            hidden_act,
            output_act,
            mask,
            lambda,
        })
    }

    /// Architecture whose hidden layer is partitioned into per-gene blocks:
    /// `q_per_gene` hidden nodes per gene, each connected only to that gene's
    /// columns.
    pub fn gene_masked(
        groups: &[GeneGroup],
        q_per_gene: usize,
        p_in: usize,
        hidden_act: Activation,
        output_act: Activation,
        lambda: f64,
    ) -> Result<Self, ModelError> {
        let mask = gene_mask(groups, q_per_gene, p_in)?;
        let q_hidden = groups.len() * q_per_gene;
        Self::with_mask(p_in, q_hidden, hidden_act, output_act, mask, lambda)
    }

    pub fn p_in(&self) -> usize {
        self.p_in
    }

    pub fn q_hidden(&self) -> usize {
        self.q_hidden
    }

    pub fn hidden_act(&self) -> Activation {
        self.hidden_act
    }

    pub fn output_act(&self) -> Activation {
        self.output_act
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Same architecture with a different penalty weight.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self, ModelError> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(ModelError::InvalidArchitecture(format!(
                "lambda must be a nonnegative real (got {lambda})"
            )));
        }
        let mut arch = self.clone();
        arch.lambda = lambda;
        Ok(arch)
    }

    pub fn mask(&self) -> &[Vec<bool>] {
        &self.mask
    }

    #[inline]
    pub fn is_active(&self, p: usize, q: usize) -> bool {
        self.mask[p][q]
    }

    pub fn is_fully_connected(&self) -> bool {
        self.mask.iter().all(|row| row.iter().all(|&m| m))
    }

    /// Active input indices per hidden node.
    pub fn active_inputs(&self) -> Vec<Vec<usize>> {
        (0..self.q_hidden)
            .map(|q| (0..self.p_in).filter(|&p| self.mask[p][q]).collect())
            .collect()
    }

    pub fn n_connections(&self) -> usize {
        self.mask
            .iter()
            .map(|row| row.iter().filter(|&&m| m).count())
            .sum()
    }

    /// Length of the flattened parameter vector: w1 (p_in x Q), b1 (Q),
    /// w2 (Q), b2.
    pub fn param_dim(&self) -> usize {
        self.p_in * self.q_hidden + 2 * self.q_hidden + 1
    }
}

/// Block-diagonal connectivity for gene-grouped inputs: `q_per_gene` hidden
/// nodes per gene, node block `g` wired only to the columns of gene `g`.
/// Returns a `p_in x (genes * q_per_gene)` mask.
pub fn gene_mask(
    groups: &[GeneGroup],
    q_per_gene: usize,
    p_in: usize,
) -> Result<Vec<Vec<bool>>, ModelError> {
    if groups.is_empty() {
        return Err(ModelError::InvalidGeneGroups("no groups given".to_string()));
    }
    if q_per_gene == 0 {
        return Err(ModelError::InvalidGeneGroups(
            "q_per_gene must be at least 1".to_string(),
        ));
    }
    let q_total = groups.len() * q_per_gene;
    let mut mask = vec![vec![false; q_total]; p_in];
    let mut used = vec![false; p_in];
    for (g, group) in groups.iter().enumerate() {
        if group.columns.is_empty() {
            return Err(ModelError::InvalidGeneGroups(format!(
                "gene '{}' has no columns",
                group.name
            )));
        }
        for &col in &group.columns {
            if col >= p_in {
                return Err(ModelError::InvalidGeneGroups(format!(
                    "gene '{}' references column {col}, input has {p_in}",
                    group.name
                )));
            }
            if used[col] {
                return Err(ModelError::InvalidGeneGroups(format!(
                    "column {col} appears in more than one gene"
                )));
            }
            used[col] = true;
            for k in 0..q_per_gene {
                mask[col][g * q_per_gene + k] = true;
            }
        }
    }
    Ok(mask)
}
