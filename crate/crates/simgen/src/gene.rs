use enn_models::{ColumnKind, Dataset, GeneGroup};
use ndarray::{Array1, Array2};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::genotypes::simulate_genotypes;
use crate::link::{draw_noise, weighted_sum};
use crate::streams::{stream_rng, STREAM_BETAS, STREAM_GAMMAS};

/// Coefficients of the two-gene model: per-gene SNP weights and the
/// strength of the gene-score product term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneGeneModel {
    pub beta_first: Vec<f64>,
    pub beta_second: Vec<f64>,
    pub gamma: f64,
}

/// Draws the two weight vectors (U(-1,1) each) and gamma ~ U(-1,1) from
/// their respective streams.
pub fn draw_gene_gene_model(snps_per_gene: usize, seed: u64) -> GeneGeneModel {
    let mut beta_rng = stream_rng(seed, STREAM_BETAS);
    let beta_first = (0..snps_per_gene)
        .map(|_| beta_rng.random_range(-1.0..1.0))
        .collect();
    let beta_second = (0..snps_per_gene)
        .map(|_| beta_rng.random_range(-1.0..1.0))
        .collect();
    let mut gamma_rng = stream_rng(seed, STREAM_GAMMAS);
    GeneGeneModel {
        beta_first,
        beta_second,
        gamma: gamma_rng.random_range(-1.0..1.0),
    }
}

/// Pre-noise signal g1 + g2 + gamma * g1 * g2, where each gene score is the
/// weighted sum of its block of columns (first gene first).
pub fn gene_gene_signal(
    genotypes: &Array2<f64>,
    model: &GeneGeneModel,
) -> Result<Array1<f64>, SimError> {
    let s = model.beta_first.len();
    if model.beta_second.len() != s || genotypes.ncols() != 2 * s {
        return Err(SimError::DimensionMismatch {
            expected: 2 * s,
            got: genotypes.ncols(),
        });
    }
    Ok(Array1::from_iter(genotypes.rows().into_iter().map(|row| {
        let g1 = weighted_sum(row.slice(ndarray::s![..s]), &model.beta_first);
        let g2 = weighted_sum(row.slice(ndarray::s![s..]), &model.beta_second);
        g1 + g2 + model.gamma * g1 * g2
    })))
}

/// Generates the two-gene interaction dataset: two genes of
/// `snps_per_gene` SNPs each, y = g1 + g2 + gamma g1 g2 + N(0,1), with the
/// gene grouping recorded on the dataset for mask construction.
pub fn simulate_gene_gene(
    n: usize,
    snps_per_gene: usize,
    maf_range: (f64, f64),
    seed: u64,
) -> Result<Dataset, SimError> {
    if n < 5 {
        return Err(SimError::InvalidSpec(format!(
            "n must be at least 5 (got {n})"
        )));
    }
    if snps_per_gene == 0 {
        return Err(SimError::InvalidSpec(
            "snps_per_gene must be at least 1".to_string(),
        ));
    }
    let p = 2 * snps_per_gene;
    let x = simulate_genotypes(n, p, maf_range, seed)?;
    let model = draw_gene_gene_model(snps_per_gene, seed);
    let y = gene_gene_signal(&x, &model)? + draw_noise(n, seed);
    let dataset = Dataset::new(x, y, vec![ColumnKind::Genotype; p])?.with_gene_groups(vec![
        GeneGroup {
            name: "gene1".to_string(),
            columns: (0..snps_per_gene).collect(),
        },
        GeneGroup {
            name: "gene2".to_string(),
            columns: (snps_per_gene..p).collect(),
        },
    ])?;
    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn signal_formula() {
        let x = array![[2.0, 0.0, 1.0, 0.0]];
        let model = GeneGeneModel {
            beta_first: vec![1.0, 0.0],
            beta_second: vec![1.0, 0.0],
            gamma: 2.0,
        };
        // g1 = 2, g2 = 1, so the signal is 2 + 1 + 2 * 2 * 1 = 7.
        let s = gene_gene_signal(&x, &model).unwrap();
        assert_eq!(s[0], 7.0);
    }

    #[test]
    fn zero_gamma_is_purely_additive() {
        let x = simulate_genotypes(20, 8, (0.05, 0.5), 3).unwrap();
        let mut model = draw_gene_gene_model(4, 3);
        model.gamma = 0.0;
        let s = gene_gene_signal(&x, &model).unwrap();
        for (i, row) in x.rows().into_iter().enumerate() {
            let g1 = weighted_sum(row.slice(ndarray::s![..4]), &model.beta_first);
            let g2 = weighted_sum(row.slice(ndarray::s![4..]), &model.beta_second);
            assert_eq!(s[i], g1 + g2);
        }
    }

    #[test]
    fn dataset_has_two_groups_of_four() {
        let ds = simulate_gene_gene(40, 4, (0.05, 0.5), 8).unwrap();
        assert_eq!(ds.p(), 8);
        assert_eq!(ds.n(), 40);
        let groups = ds.gene_groups().unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].columns, vec![0, 1, 2, 3]);
        assert_eq!(groups[1].columns, vec![4, 5, 6, 7]);
        assert!(ds.x().iter().all(|&v| v == 0.0 || v == 1.0 || v == 2.0));
    }

    #[test]
    fn seeded_dataset_repeats() {
        let a = simulate_gene_gene(25, 4, (0.05, 0.5), 13).unwrap();
        let b = simulate_gene_gene(25, 4, (0.05, 0.5), 13).unwrap();
        assert_eq!(a.x(), b.x());
        assert_eq!(a.y(), b.y());
    }

    #[test]
    fn rejects_tiny_n() {
        assert!(simulate_gene_gene(4, 4, (0.05, 0.5), 0).is_err());
    }
}
