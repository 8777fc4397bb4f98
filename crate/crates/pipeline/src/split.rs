use enn_models::Dataset;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::PipelineError;

/// Train/validation/test partition weights plus the shuffle seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    /// Relative part sizes; normalized internally, so (3, 1, 1) and
    /// (0.6, 0.2, 0.2) are the same split.
    pub ratios: (f64, f64, f64),
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train: f64, validation: f64, test: f64, seed: u64) -> Self {
        Self {
            ratios: (train, validation, test),
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let (a, b, c) = self.ratios;
        if !(a.is_finite() && b.is_finite() && c.is_finite() && a > 0.0 && b > 0.0 && c > 0.0) {
            return Err(PipelineError::InvalidConfig(format!(
                "split ratios must be positive reals (got {:?})",
                self.ratios
            )));
        }
        Ok(())
    }
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self::new(3.0, 1.0, 1.0, 0)
    }
}

/// Part sizes by largest-remainder rounding of the normalized ratios; the
/// sizes always sum to n.
fn part_sizes(n: usize, ratios: (f64, f64, f64)) -> [usize; 3] {
    let weights = [ratios.0, ratios.1, ratios.2];
    let total: f64 = weights.iter().sum();
    let quotas: Vec<f64> = weights.iter().map(|w| n as f64 * w / total).collect();
    let mut sizes: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&i, &j| {
        let fi = quotas[i] - quotas[i].floor();
        let fj = quotas[j] - quotas[j].floor();
        fj.total_cmp(&fi).then(i.cmp(&j))
    });
    for &k in order.iter().take(n - assigned) {
        sizes[k] += 1;
    }
    [sizes[0], sizes[1], sizes[2]]
}

/// Row-index partition: seeded uniform shuffle of 0..n, then a contiguous
/// cut at the rounded ratio boundaries.
pub fn split_indices(
    n: usize,
    spec: &SplitSpec,
) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>), PipelineError> {
    spec.validate()?;
    let sizes = part_sizes(n, spec.ratios);
    if sizes.iter().any(|&s| s == 0) {
        return Err(PipelineError::InvalidConfig(format!(
            "split of {n} rows at ratios {:?} leaves an empty part (sizes {sizes:?})",
            spec.ratios
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    order.shuffle(&mut rng);
    let validation = order.split_off(sizes[0] + sizes[1]);
    let test = validation;
    let validation = order.split_off(sizes[0]);
    Ok((order, validation, test))
}

/// Splits the dataset into (train, validation, test).
pub fn split(
    data: &Dataset,
    spec: &SplitSpec,
) -> Result<(Dataset, Dataset, Dataset), PipelineError> {
    let (itr, iva, ite) = split_indices(data.n(), spec)?;
    Ok((
        data.select_rows(&itr)?,
        data.select_rows(&iva)?,
        data.select_rows(&ite)?,
    ))
}
