use enn_simgen::{
    draw_interaction_model, draw_noise, interaction_signal, simulate_genotypes,
    simulate_phenotype_interaction, simulate_phenotype_link, InteractionKind, LinkFn,
    ScenarioRegistry, SimulationSpec,
};

/// Zeroing the interaction strengths must reproduce the purely additive
/// phenotype bit for bit: main effects and noise come from their own RNG
/// streams, so removing the gamma terms cannot shift them.
#[test]
fn zeroed_gammas_match_the_additive_baseline_exactly() {
    let seed = 21;
    let x = simulate_genotypes(200, 50, (0.05, 0.5), seed).unwrap();

    let mut model = draw_interaction_model(50, InteractionKind::Mult2, 0.2, seed).unwrap();
    for term in &mut model.terms {
        term.gamma = 0.0;
    }
    let forced = interaction_signal(&x, &model).unwrap() + draw_noise(200, seed);

    let baseline =
        simulate_phenotype_interaction(&x, InteractionKind::None, 0.2, seed).unwrap();

    assert_eq!(forced.len(), baseline.len());
    for (a, b) in forced.iter().zip(baseline.iter()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

/// The additive interaction baseline and the linear link scenario are the
/// same generative model; with a shared seed they must agree exactly.
#[test]
fn additive_baseline_equals_linear_link_generation() {
    let seed = 77;
    let x = simulate_genotypes(120, 30, (0.05, 0.5), seed).unwrap();
    let a = simulate_phenotype_interaction(&x, InteractionKind::None, 0.2, seed).unwrap();
    let b = simulate_phenotype_link(&x, LinkFn::Linear, seed).unwrap();
    for (u, v) in a.iter().zip(b.iter()) {
        assert_eq!(u.to_bits(), v.to_bits());
    }
}

#[test]
fn every_builtin_scenario_is_deterministic_and_well_formed() {
    let reg = ScenarioRegistry::builtin();
    for name in reg.names() {
        let mut spec = SimulationSpec::new(name, 60, 15, 5);
        spec.seed = 1234;
        let first = reg.generate(&spec).unwrap();
        let second = reg.generate(&spec).unwrap();
        assert_eq!(first.x(), second.x(), "scenario {name} not deterministic");
        assert_eq!(first.y(), second.y(), "scenario {name} not deterministic");
        assert!(
            first
                .x()
                .iter()
                .all(|&v| v == 0.0 || v == 1.0 || v == 2.0),
            "scenario {name} produced non-dosage genotypes"
        );
        assert!(
            first.y().iter().all(|v| v.is_finite()),
            "scenario {name} produced non-finite phenotypes"
        );

        let shifted = SimulationSpec {
            seed: 4321,
            ..spec.clone()
        };
        let third = reg.generate(&shifted).unwrap();
        assert_ne!(
            first.y(),
            third.y(),
            "scenario {name} ignored the seed"
        );
    }
}

#[test]
fn gene_scenario_carries_its_grouping() {
    let reg = ScenarioRegistry::builtin();
    let spec = SimulationSpec::new("gene_gene", 50, 8, 2);
    let ds = reg.generate(&spec).unwrap();
    let groups = ds.gene_groups().expect("gene grouping present");
    assert_eq!(groups.len(), 2);
    assert!(groups.iter().all(|g| g.columns.len() == 4));
    assert_eq!(ds.p(), 8);
}

#[test]
fn link_scenarios_share_genotypes_for_a_shared_seed() {
    // The genotype stream is independent of the phenotype streams, so two
    // scenarios with one seed see the same design matrix.
    let reg = ScenarioRegistry::builtin();
    let a = reg.generate(&SimulationSpec::new("linear", 40, 12, 9)).unwrap();
    let b = reg.generate(&SimulationSpec::new("cubic", 40, 12, 9)).unwrap();
    assert_eq!(a.x(), b.x());
    assert_ne!(a.y(), b.y());
}
