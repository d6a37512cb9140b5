//! Cross-module invariants over random instances: witness replay, the
//! bounded-loop / 2-Loop coincidence, polarity laws on arbitrary worlds,
//! the choice-function lemma tying Coherence to Local Cumulativity, and the
//! well-definedness of the two-case extension on representation outputs.

use clogic_core::axioms::{check_c_axioms, check_loop, check_two_loop, replay_axiom};
use clogic_core::choice::{
    check_choice_axioms, check_coherence, check_contraction, check_local_cumulativity,
    check_local_monotonicity, induced_consequence, replay_choice_axiom, ChoiceFunction, FCModel,
};
use clogic_core::connectives::{classical_implication_checks, RuleCheckConfig};
use clogic_core::corpus::{
    corpus_language, random_fc_model, standard_c_logic_corpus, uniform_table,
};
use clogic_core::formula::ClosedLanguage;
use clogic_core::lang::{AtomLanguage, AtomSet};
use clogic_core::represent::represent;
use clogic_core::table::ConsequenceTable;
use clogic_core::world::{check_definable_intersections, check_galois, ModelMask, ModelWorld};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn table_strategy(atoms: usize) -> impl Strategy<Value = ConsequenceTable> {
    let rows = 1usize << atoms;
    let top = (1u32 << atoms) - 1;
    proptest::collection::vec(0..=top, rows).prop_map(move |rows| {
        let lang = corpus_language(atoms);
        ConsequenceTable::new(lang, rows.into_iter().map(AtomSet).collect()).unwrap()
    })
}

fn world_strategy(atoms: usize, max_models: usize) -> impl Strategy<Value = ModelWorld> {
    let top = (1u32 << atoms) - 1;
    proptest::collection::vec(0..=top, 1..=max_models).prop_map(move |sats| {
        let lang = corpus_language(atoms);
        let models = sats
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("w{i}"), AtomSet(s)))
            .collect();
        ModelWorld::new(lang, models).unwrap()
    })
}

proptest! {
    #[test]
    fn loop_at_two_is_the_two_loop_axiom(table in table_strategy(3)) {
        prop_assert_eq!(
            check_loop(&table, 2).unwrap().holds,
            check_two_loop(&table).holds
        );
    }

    #[test]
    fn every_failing_witness_replays(table in table_strategy(3)) {
        for report in check_c_axioms(&table) {
            if !report.holds {
                let masks = report.witness.as_ref().unwrap().masks();
                prop_assert!(
                    replay_axiom(&table, &report.property, &masks),
                    "{} witness does not re-violate",
                    report.property
                );
            }
        }
        let loop_report = check_loop(&table, 4).unwrap();
        if !loop_report.holds {
            let masks = loop_report.witness.as_ref().unwrap().masks();
            prop_assert!(replay_axiom(&table, "Loop", &masks));
        }
    }

    #[test]
    fn polarity_laws_hold_on_arbitrary_worlds(world in world_strategy(4, 5)) {
        prop_assert!(check_galois(&world).holds);
        prop_assert!(check_definable_intersections(&world).holds);
    }

    #[test]
    fn choice_witnesses_replay_on_random_functions(
        world in world_strategy(3, 4),
        picks in proptest::collection::vec(any::<u32>(), 16),
    ) {
        // f(X) = an arbitrary subset of X, rarely lawful.
        let entries = world
            .masks()
            .map(|x| (x, ModelMask(picks[x.0 as usize % picks.len()] & x.0)))
            .collect::<Vec<_>>();
        let fcm = FCModel::new(world, ChoiceFunction::table(entries), false);
        for report in check_choice_axioms(&fcm) {
            if !report.holds {
                let masks = report.witness.as_ref().unwrap().masks();
                prop_assert!(
                    replay_choice_axiom(&fcm, &report.property, &masks),
                    "{} witness does not re-violate",
                    report.property
                );
            }
        }
    }
}

#[test]
fn coherence_and_local_monotonicity_force_local_cumulativity() {
    // Contraction-respecting random choice functions; whenever Coherence and
    // Local Monotonicity both hold, Local Cumulativity must follow.
    let lang = corpus_language(2);
    let world = ModelWorld::new(
        lang,
        vec![
            ("x".into(), AtomSet(1)),
            ("y".into(), AtomSet(2)),
            ("z".into(), AtomSet(3)),
        ],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e77a);
    let mut exercised = 0usize;
    for _ in 0..4000 {
        let entries: Vec<(ModelMask, ModelMask)> = world
            .masks()
            .map(|x| (x, ModelMask(rng.random_range(0..8u32) & x.0)))
            .collect();
        let fcm = FCModel::new(world.clone(), ChoiceFunction::table(entries), false);
        assert!(check_contraction(&fcm).holds);
        if check_coherence(&fcm).holds && check_local_monotonicity(&fcm).holds {
            exercised += 1;
            let lc = check_local_cumulativity(&fcm);
            assert!(lc.holds, "{}", lc.summary());
        }
    }
    assert!(
        exercised > 10,
        "the filter must pass some instances, got {exercised}"
    );
}

#[test]
fn two_case_extension_is_well_defined_across_the_corpus() {
    for (i, (table, _)) in standard_c_logic_corpus(0x0f9e, 120, 80).iter().enumerate() {
        let fcm = represent(table).expect("corpus tables are cumulative");
        for x in fcm.world().masks() {
            let report = fcm.f_prime_well_defined(x);
            assert!(report.holds, "instance {i}: {}", report.summary());
        }
    }
}

#[test]
fn sound_models_induce_lawful_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50c4d);
    for atoms in 2..=4 {
        let lang = corpus_language(atoms);
        for _ in 0..60 {
            let fcm = random_fc_model(&lang, &mut rng);
            let table = induced_consequence(&fcm);
            assert!(check_c_axioms(&table).iter().all(|r| r.holds));
        }
    }
}

#[test]
fn classical_implications_hold_on_representations() {
    for (i, (table, _)) in standard_c_logic_corpus(0x11c4, 30, 20).iter().enumerate() {
        if table.language().len() > 3 {
            continue;
        }
        let fcm = represent(table).unwrap();
        let lang = ClosedLanguage::new(table.language().clone(), 1);
        let config = RuleCheckConfig::default_for(&lang);
        let report = classical_implication_checks(&fcm, &lang, &config);
        assert!(report.holds, "instance {i}: {}", report.summary());
    }
}

#[test]
fn uniform_tables_mostly_fail_but_never_break_the_checker() {
    // Smoke over arbitrary tables at the largest exhaustive-suite size.
    let lang = corpus_language(4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let t = uniform_table(&lang, &mut rng);
        let reports = check_c_axioms(&t);
        for report in &reports {
            if !report.holds {
                let masks = report.witness.as_ref().unwrap().masks();
                assert!(replay_axiom(&t, &report.property, &masks));
            }
        }
    }
}

#[test]
fn projection_and_intersection_numerics_on_random_instances() {
    use clogic_core::quantum::{intersect, member, project};
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e0);
    for _ in 0..100 {
        let q = clogic_core::corpus::random_quantum_instance(&mut rng, 4, 4);
        let h = q.state();
        for i in 0..q.len() {
            let s = q.subspace(i);
            let p = project(s, h);
            // Idempotence, contraction of the norm, residual orthogonality.
            let pp = project(s, &p);
            let drift: f64 =
                pp.0.iter()
                    .zip(&p.0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
            assert!(drift <= 1e-9);
            assert!(p.norm() <= h.norm() + 1e-9);
            for basis in s.basis_vectors() {
                let dot: f64 =
                    h.0.iter()
                        .zip(&p.0)
                        .zip(&basis.0)
                        .map(|((hv, pv), bv)| (hv - pv) * bv)
                        .sum();
                assert!(dot.abs() <= 1e-9, "residual not orthogonal: {dot}");
            }
        }
        // Every basis vector of a pairwise meet belongs to both inputs.
        for i in 0..q.len() {
            for j in i + 1..q.len() {
                let meet = intersect(q.dim(), &[q.subspace(i), q.subspace(j)]).unwrap();
                for x in meet.basis_vectors() {
                    assert!(member(q.subspace(i), &x, 1e-9));
                    assert!(member(q.subspace(j), &x, 1e-9));
                }
            }
        }
    }
}

#[test]
fn representation_world_sizes_match_consistent_theory_counts() {
    let lang = AtomLanguage::new(["a", "b"]).unwrap();
    let identity = ConsequenceTable::identity(lang.clone());
    assert_eq!(represent(&identity).unwrap().world().model_count(), 3);
    let constant = ConsequenceTable::constant_full(lang);
    assert_eq!(represent(&constant).unwrap().world().model_count(), 0);
}
