use std::fmt;
use std::str::FromStr;

use ndarray::{Array1, Array2};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::link::{draw_main_effects, draw_noise, weighted_sum};
use crate::streams::{stream_rng, STREAM_GAMMAS, STREAM_SELECTION};

/// Shape of the epistatic terms layered on top of the additive model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionKind {
    /// gamma * x_a * x_b
    Mult2,
    /// gamma * 1[x_a >= 1] * 1[x_b >= 1] (carrier indicators)
    Thresh2,
    /// gamma * x_a * x_b * x_c
    ThreeWay,
    /// Purely additive baseline.
    None,
}

impl InteractionKind {
    pub const ALL: [InteractionKind; 4] = [
        InteractionKind::Mult2,
        InteractionKind::Thresh2,
        InteractionKind::ThreeWay,
        InteractionKind::None,
    ];

    /// Number of SNP columns consumed by one interaction term.
    pub fn arity(self) -> usize {
        match self {
            InteractionKind::Mult2 | InteractionKind::Thresh2 => 2,
            InteractionKind::ThreeWay => 3,
            InteractionKind::None => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InteractionKind::Mult2 => "mult2",
            InteractionKind::Thresh2 => "thresh2",
            InteractionKind::ThreeWay => "three_way",
            InteractionKind::None => "none",
        }
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InteractionKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        InteractionKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| SimError::UnknownScenario(s.to_string()))
    }
}

/// One epistatic term: the product of the listed columns (carrier
/// indicators instead of dosages when `thresholded`), scaled by `gamma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionTerm {
    pub columns: Vec<usize>,
    pub gamma: f64,
    pub thresholded: bool,
}

/// Fully drawn coefficients of an interaction phenotype model: main effects
/// on every SNP plus zero or more interaction terms on disjoint columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionModel {
    pub beta: Vec<f64>,
    pub terms: Vec<InteractionTerm>,
}

/// Draws the coefficients for `p` SNP columns: beta ~ U(-1,1) on all
/// columns; a fraction of columns is selected at random and grouped into
/// disjoint tuples, each with its own gamma ~ U(-1,1).  Selected columns
/// left over after tuple formation carry only their main effect.
pub fn draw_interaction_model(
    p: usize,
    kind: InteractionKind,
    fraction: f64,
    seed: u64,
) -> Result<InteractionModel, SimError> {
    if p == 0 {
        return Err(SimError::InvalidSpec("p must be at least 1".to_string()));
    }
    if !(fraction.is_finite() && (0.0..=1.0).contains(&fraction)) {
        return Err(SimError::InvalidSpec(format!(
            "interaction fraction must lie in [0, 1] (got {fraction})"
        )));
    }

    let beta = draw_main_effects(p, seed);
    if kind == InteractionKind::None {
        return Ok(InteractionModel {
            beta,
            terms: Vec::new(),
        });
    }

    let arity = kind.arity();
    let selected = (fraction * p as f64).round() as usize;
    if selected < arity {
        return Err(SimError::InsufficientColumns {
            needed: arity,
            selected,
        });
    }

    let mut sel_rng = stream_rng(seed, STREAM_SELECTION);
    let mut columns: Vec<usize> = (0..p).collect();
    columns.shuffle(&mut sel_rng);
    columns.truncate(selected);

    let mut gamma_rng = stream_rng(seed, STREAM_GAMMAS);
    let terms = columns
        .chunks_exact(arity)
        .map(|tuple| InteractionTerm {
            columns: tuple.to_vec(),
            gamma: gamma_rng.random_range(-1.0..1.0),
            thresholded: kind == InteractionKind::Thresh2,
        })
        .collect();

    Ok(InteractionModel { beta, terms })
}

/// Pre-noise signal of an interaction model: x_i' beta plus every term's
/// scaled column product.
pub fn interaction_signal(
    genotypes: &Array2<f64>,
    model: &InteractionModel,
) -> Result<Array1<f64>, SimError> {
    let p = genotypes.ncols();
    if model.beta.len() != p {
        return Err(SimError::DimensionMismatch {
            expected: p,
            got: model.beta.len(),
        });
    }
    for term in &model.terms {
        if let Some(&bad) = term.columns.iter().find(|&&c| c >= p) {
            return Err(SimError::DimensionMismatch {
                expected: p,
                got: bad,
            });
        }
    }

    Ok(Array1::from_iter(genotypes.rows().into_iter().map(|row| {
        let mut acc = weighted_sum(row, &model.beta);
        for term in &model.terms {
            let mut prod = term.gamma;
            for &c in &term.columns {
                prod *= if term.thresholded {
                    f64::from(row[c] >= 1.0)
                } else {
                    row[c]
                };
            }
            acc += prod;
        }
        acc
    })))
}

/// y = interaction signal + N(0, 1) noise, all drawn deterministically
/// from the seed's named streams.
pub fn simulate_phenotype_interaction(
    genotypes: &Array2<f64>,
    kind: InteractionKind,
    fraction: f64,
    seed: u64,
) -> Result<Array1<f64>, SimError> {
    let model = draw_interaction_model(genotypes.ncols(), kind, fraction, seed)?;
    let signal = interaction_signal(genotypes, &model)?;
    Ok(signal + draw_noise(genotypes.nrows(), seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn default_selection_takes_ten_of_fifty() {
        let model = draw_interaction_model(50, InteractionKind::Mult2, 0.2, 4).unwrap();
        let mut used: Vec<usize> = model
            .terms
            .iter()
            .flat_map(|t| t.columns.iter().copied())
            .collect();
        assert_eq!(model.terms.len(), 5);
        assert_eq!(used.len(), 10);
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 10, "interaction columns must be disjoint");
        assert!(used.iter().all(|&c| c < 50));
        assert_eq!(model.beta.len(), 50);
    }

    #[test]
    fn three_way_leftover_columns_are_dropped() {
        // round(0.2 * 50) = 10 selected, 3 triples, one column left over.
        let model = draw_interaction_model(50, InteractionKind::ThreeWay, 0.2, 4).unwrap();
        assert_eq!(model.terms.len(), 3);
        assert!(model.terms.iter().all(|t| t.columns.len() == 3));
    }

    #[test]
    fn too_few_selected_columns_rejected() {
        let err = draw_interaction_model(5, InteractionKind::Mult2, 0.2, 0).unwrap_err();
        assert!(matches!(
            err,
            SimError::InsufficientColumns {
                needed: 2,
                selected: 1
            }
        ));
        assert!(draw_interaction_model(10, InteractionKind::ThreeWay, 0.2, 0).is_err());
    }

    #[test]
    fn threshold_terms_vanish_without_carriers() {
        let x = array![[0.0, 2.0], [1.0, 2.0], [2.0, 0.0], [1.0, 1.0]];
        let model = InteractionModel {
            beta: vec![0.0, 0.0],
            terms: vec![InteractionTerm {
                columns: vec![0, 1],
                gamma: 5.0,
                thresholded: true,
            }],
        };
        let s = interaction_signal(&x, &model).unwrap();
        assert_eq!(s, array![0.0, 5.0, 0.0, 5.0]);
    }

    #[test]
    fn multiplicative_term_uses_dosages() {
        let x = array![[2.0, 3.0, 1.0]];
        let model = InteractionModel {
            beta: vec![1.0, 0.0, 0.0],
            terms: vec![InteractionTerm {
                columns: vec![0, 1, 2],
                gamma: -0.5,
                thresholded: false,
            }],
        };
        let s = interaction_signal(&x, &model).unwrap();
        assert_eq!(s[0], 2.0 - 0.5 * 6.0);
    }

    #[test]
    fn out_of_range_term_column_rejected() {
        let x = array![[1.0, 0.0]];
        let model = InteractionModel {
            beta: vec![0.0, 0.0],
            terms: vec![InteractionTerm {
                columns: vec![0, 2],
                gamma: 1.0,
                thresholded: false,
            }],
        };
        assert!(interaction_signal(&x, &model).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in InteractionKind::ALL {
            assert_eq!(kind.name().parse::<InteractionKind>().unwrap(), kind);
        }
        assert!("fourway".parse::<InteractionKind>().is_err());
        assert_eq!(
            "Three-Way".parse::<InteractionKind>().unwrap(),
            InteractionKind::ThreeWay
        );
    }
}
