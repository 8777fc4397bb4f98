use serde::{Deserialize, Serialize};

use crate::error::SimError;

fn default_maf_range() -> (f64, f64) {
    (0.05, 0.5)
}

fn default_fraction() -> f64 {
    0.2
}

/// Declarative description of one synthetic dataset.  `scenario` is looked
/// up in a [`crate::ScenarioRegistry`] at generation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSpec {
    pub scenario: String,
    pub n: usize,
    pub p: usize,
    /// Per-column minor-allele frequencies are drawn uniformly from this
    /// closed interval.
    #[serde(default = "default_maf_range")]
    pub maf_range: (f64, f64),
    /// Share of SNP columns entering interaction terms (interaction
    /// scenarios only).
    #[serde(default = "default_fraction")]
    pub interaction_fraction: f64,
    #[serde(default)]
    pub seed: u64,
}

impl SimulationSpec {
    pub fn new(scenario: impl Into<String>, n: usize, p: usize, seed: u64) -> Self {
        Self {
            scenario: scenario.into(),
            n,
            p,
            maf_range: default_maf_range(),
            interaction_fraction: default_fraction(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.scenario.trim().is_empty() {
            return Err(SimError::InvalidSpec("empty scenario name".to_string()));
        }
        if self.n < 5 {
            return Err(SimError::InvalidSpec(format!(
                "n must be at least 5 (got {})",
                self.n
            )));
        }
        if self.p == 0 {
            return Err(SimError::InvalidSpec("p must be at least 1".to_string()));
        }
        let (lo, hi) = self.maf_range;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi && hi <= 0.5) {
            return Err(SimError::InvalidSpec(format!(
                "MAF range must satisfy 0 < lo <= hi <= 0.5 (got ({lo}, {hi}))"
            )));
        }
        if !(self.interaction_fraction.is_finite()
            && (0.0..=1.0).contains(&self.interaction_fraction))
        {
            return Err(SimError::InvalidSpec(format!(
                "interaction_fraction must lie in [0, 1] (got {})",
                self.interaction_fraction
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_fields_validate() {
        assert!(SimulationSpec::new("linear", 500, 50, 0).validate().is_ok());
    }

    #[test]
    fn rejects_out_of_range_fields() {
        let bad = |f: &dyn Fn(&mut SimulationSpec)| {
            let mut s = SimulationSpec::new("linear", 500, 50, 0);
            f(&mut s);
            s.validate().is_err()
        };
        assert!(bad(&|s| s.n = 4));
        assert!(bad(&|s| s.p = 0));
        assert!(bad(&|s| s.maf_range = (0.0, 0.5)));
        assert!(bad(&|s| s.maf_range = (0.3, 0.2)));
        assert!(bad(&|s| s.maf_range = (0.1, 0.6)));
        assert!(bad(&|s| s.interaction_fraction = 1.5));
        assert!(bad(&|s| s.scenario = "  ".to_string()));
    }

    #[test]
    fn serde_fills_defaults() {
        let spec: SimulationSpec =
            serde_json::from_str(r#"{"scenario": "mixed", "n": 100, "p": 10}"#).unwrap();
        assert_eq!(spec.maf_range, (0.05, 0.5));
        assert_eq!(spec.interaction_fraction, 0.2);
        assert_eq!(spec.seed, 0);
    }
}
