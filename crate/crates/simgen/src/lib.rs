//! Synthetic genotype and phenotype generation.
//!
//! Genotypes are Hardy-Weinberg binomial dosages with per-column
//! minor-allele frequencies.  Phenotypes come in three families: link
//! scenarios (a shaped function of the additive genetic score plus unit
//! Gaussian noise), interaction scenarios (additive main effects plus
//! epistatic terms on a randomly selected fraction of SNPs), and a two-gene
//! model whose gene scores interact multiplicatively.  All generators are
//! pure functions of their seed, drawing each component (genotypes, main
//! effects, interaction strengths, noise, selection) from its own named RNG
//! stream so one component can be overridden without shifting the others.

mod error;
mod gene;
mod genotypes;
mod interaction;
mod link;
mod registry;
mod spec;
mod streams;

pub use error::SimError;
pub use gene::{draw_gene_gene_model, gene_gene_signal, simulate_gene_gene, GeneGeneModel};
pub use genotypes::simulate_genotypes;
pub use interaction::{
    draw_interaction_model, interaction_signal, simulate_phenotype_interaction, InteractionKind,
    InteractionModel, InteractionTerm,
};
pub use link::{
    draw_main_effects, draw_noise, link_signal, phenotype_link, simulate_phenotype_link, LinkFn,
};
pub use registry::{Scenario, ScenarioRegistry, GENE_SNPS};
pub use spec::SimulationSpec;
