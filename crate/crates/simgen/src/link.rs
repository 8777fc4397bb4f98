use std::fmt;
use std::str::FromStr;

use ndarray::{Array1, Array2, ArrayView1};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::streams::{stream_rng, STREAM_BETAS, STREAM_NOISE};

/// Signal-shaping function applied to the genetic score alpha = x'beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkFn {
    Linear,
    Hyperbolic,
    Mixed,
    Quadratic,
    Cubic,
}

impl LinkFn {
    pub const ALL: [LinkFn; 5] = [
        LinkFn::Linear,
        LinkFn::Hyperbolic,
        LinkFn::Mixed,
        LinkFn::Quadratic,
        LinkFn::Cubic,
    ];

    pub fn apply(self, alpha: f64) -> f64 {
        match self {
            LinkFn::Linear => alpha,
            LinkFn::Hyperbolic => alpha.abs() / (1.0 + alpha.abs()),
            LinkFn::Mixed => alpha.sin() + 2.0 * (-16.0 * alpha * alpha).exp(),
            LinkFn::Quadratic => alpha * alpha,
            LinkFn::Cubic => alpha * alpha * alpha,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LinkFn::Linear => "linear",
            LinkFn::Hyperbolic => "hyperbolic",
            LinkFn::Mixed => "mixed",
            LinkFn::Quadratic => "quadratic",
            LinkFn::Cubic => "cubic",
        }
    }
}

impl fmt::Display for LinkFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinkFn {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinkFn::ALL
            .into_iter()
            .find(|l| l.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| SimError::UnknownScenario(s.to_string()))
    }
}

/// Evaluates the named link at one score value.
pub fn phenotype_link(link: LinkFn, alpha: f64) -> f64 {
    link.apply(alpha)
}

pub(crate) fn weighted_sum(row: ArrayView1<f64>, beta: &[f64]) -> f64 {
    row.iter().zip(beta).map(|(x, b)| x * b).sum()
}

/// Draws the main-effect coefficients beta ~ U(-1, 1)^p from the
/// coefficient stream.
pub fn draw_main_effects(p: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, STREAM_BETAS);
    (0..p).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Draws n standard-normal noise terms from the noise stream.
pub fn draw_noise(n: usize, seed: u64) -> Array1<f64> {
    let mut rng = stream_rng(seed, STREAM_NOISE);
    Array1::from_iter((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

/// Pre-noise signal link(x_i' beta) for every row.
pub fn link_signal(
    genotypes: &Array2<f64>,
    link: LinkFn,
    beta: &[f64],
) -> Result<Array1<f64>, SimError> {
    if beta.len() != genotypes.ncols() {
        return Err(SimError::DimensionMismatch {
            expected: genotypes.ncols(),
            got: beta.len(),
        });
    }
    Ok(Array1::from_iter(
        genotypes
            .rows()
            .into_iter()
            .map(|row| link.apply(weighted_sum(row, beta))),
    ))
}

/// y_i = link(x_i' beta) + eps_i with freshly drawn beta ~ U(-1,1)^p and
/// eps ~ N(0, 1), all deterministic in the seed.
pub fn simulate_phenotype_link(
    genotypes: &Array2<f64>,
    link: LinkFn,
    seed: u64,
) -> Result<Array1<f64>, SimError> {
    let beta = draw_main_effects(genotypes.ncols(), seed);
    let signal = link_signal(genotypes, link, &beta)?;
    Ok(signal + draw_noise(genotypes.nrows(), seed))
}
