use ndarray::Array2;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::SimError;
use crate::streams::{stream_rng, STREAM_GENOTYPES};

/// Draws an n x p genotype dosage matrix under Hardy-Weinberg equilibrium:
/// column j gets a minor-allele frequency MAF_j ~ uniform(lo, hi), and its
/// entries are i.i.d. Binomial(2, MAF_j), so every value lies in {0, 1, 2}.
pub fn simulate_genotypes(
    n: usize,
    p: usize,
    maf_range: (f64, f64),
    seed: u64,
) -> Result<Array2<f64>, SimError> {
    let (lo, hi) = maf_range;
    if n == 0 || p == 0 {
        return Err(SimError::InvalidSpec(format!(
            "genotype matrix needs n >= 1 and p >= 1 (got {n} x {p})"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi && hi <= 0.5) {
        return Err(SimError::InvalidSpec(format!(
            "MAF range must satisfy 0 < lo <= hi <= 0.5 (got ({lo}, {hi}))"
        )));
    }

    let mut rng = stream_rng(seed, STREAM_GENOTYPES);
    let mafs: Vec<f64> = (0..p).map(|_| rng.random_range(lo..=hi)).collect();
    let mut x = Array2::zeros((n, p));
    for (j, &maf) in mafs.iter().enumerate() {
        let binom = Binomial::new(2, maf).expect("validated MAF");
        for i in 0..n {
            x[[i, j]] = binom.sample(&mut rng) as f64;
        }
    }
    Ok(x)
}
