use std::collections::BTreeMap;

use enn_models::{ColumnKind, Dataset};

use crate::error::SimError;
use crate::gene::simulate_gene_gene;
use crate::genotypes::simulate_genotypes;
use crate::interaction::{simulate_phenotype_interaction, InteractionKind};
use crate::link::{simulate_phenotype_link, LinkFn};
use crate::spec::SimulationSpec;

/// SNPs per gene in the two-gene scenario.
pub const GENE_SNPS: usize = 4;

/// A named dataset generator resolvable at runtime.
pub trait Scenario: Send + Sync {
    fn name(&self) -> &'static str;
    fn generate(&self, spec: &SimulationSpec) -> Result<Dataset, SimError>;
}

struct LinkScenario {
    name: &'static str,
    link: LinkFn,
}

impl Scenario for LinkScenario {
    fn name(&self) -> &'static str {
        self.name
    }

    fn generate(&self, spec: &SimulationSpec) -> Result<Dataset, SimError> {
        spec.validate()?;
        let x = simulate_genotypes(spec.n, spec.p, spec.maf_range, spec.seed)?;
        let y = simulate_phenotype_link(&x, self.link, spec.seed)?;
        Ok(Dataset::new(x, y, vec![ColumnKind::Genotype; spec.p])?)
    }
}

struct InteractionScenario {
    name: &'static str,
    kind: InteractionKind,
}

impl Scenario for InteractionScenario {
    fn name(&self) -> &'static str {
        self.name
    }

    fn generate(&self, spec: &SimulationSpec) -> Result<Dataset, SimError> {
        spec.validate()?;
        let x = simulate_genotypes(spec.n, spec.p, spec.maf_range, spec.seed)?;
        let y =
            simulate_phenotype_interaction(&x, self.kind, spec.interaction_fraction, spec.seed)?;
        Ok(Dataset::new(x, y, vec![ColumnKind::Genotype; spec.p])?)
    }
}

/// Two genes of [`GENE_SNPS`] SNPs each; `spec.p` and
/// `spec.interaction_fraction` are not used by this scenario.
struct GeneGeneScenario;

impl Scenario for GeneGeneScenario {
    fn name(&self) -> &'static str {
        "gene_gene"
    }

    fn generate(&self, spec: &SimulationSpec) -> Result<Dataset, SimError> {
        spec.validate()?;
        simulate_gene_gene(spec.n, GENE_SNPS, spec.maf_range, spec.seed)
    }
}

fn normalize(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

/// Runtime-resolvable table of dataset generators, keyed by scenario name
/// with optional aliases.
pub struct ScenarioRegistry {
    scenarios: BTreeMap<String, Box<dyn Scenario>>,
    aliases: BTreeMap<String, String>,
}

impl ScenarioRegistry {
    pub fn empty() -> Self {
        Self {
            scenarios: BTreeMap::new(),
            aliases: BTreeMap::new(),
        }
    }

    /// All built-in scenarios: the five link shapes, the four interaction
    /// variants, and the two-gene model.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        for link in LinkFn::ALL {
            reg.register(Box::new(LinkScenario {
                name: link.name(),
                link,
            }));
        }
        reg.register(Box::new(InteractionScenario {
            name: "interact2mult",
            kind: InteractionKind::Mult2,
        }));
        reg.register(Box::new(InteractionScenario {
            name: "interact2thresh",
            kind: InteractionKind::Thresh2,
        }));
        reg.register(Box::new(InteractionScenario {
            name: "interact3",
            kind: InteractionKind::ThreeWay,
        }));
        reg.register(Box::new(InteractionScenario {
            name: "no_interaction",
            kind: InteractionKind::None,
        }));
        reg.register(Box::new(GeneGeneScenario));
        reg.alias("mult2", "interact2mult");
        reg.alias("thresh2", "interact2thresh");
        reg.alias("three_way", "interact3");
        reg.alias("none", "no_interaction");
        reg
    }

    pub fn register(&mut self, scenario: Box<dyn Scenario>) {
        self.scenarios
            .insert(normalize(scenario.name()), scenario);
    }

    pub fn alias(&mut self, alias: &str, canonical: &str) {
        self.aliases
            .insert(normalize(alias), normalize(canonical));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Scenario> {
        let key = normalize(name);
        let key = self.aliases.get(&key).unwrap_or(&key);
        self.scenarios.get(key).map(|b| b.as_ref())
    }

    /// Canonical scenario names, sorted.
    pub fn names(&self) -> Vec<&str> {
        self.scenarios.keys().map(|s| s.as_str()).collect()
    }

    /// Resolves `spec.scenario` and generates the dataset.
    pub fn generate(&self, spec: &SimulationSpec) -> Result<Dataset, SimError> {
        spec.validate()?;
        self.get(&spec.scenario)
            .ok_or_else(|| SimError::UnknownScenario(spec.scenario.clone()))?
            .generate(spec)
    }
}

impl Default for ScenarioRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
