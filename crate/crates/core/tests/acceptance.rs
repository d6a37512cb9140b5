//! Acceptance suite: one test per numbered criterion, each printing a single
//! PASS/FAIL line with its runtime. Run with `--nocapture` to see the lines.

use std::time::Instant;

use clogic_core::axioms::{
    check_c_axioms, check_cautious_monotonicity, check_cumulativity, check_idempotence,
    check_inclusion, check_loop, check_two_loop, replay_cycle,
};
use clogic_core::builtins::{self, NamedExample};
use clogic_core::choice::{
    check_consistency, check_contraction, check_local_cumulativity, induced_consequence,
};
use clogic_core::connectives::{
    check_connective_rules, conservative_extension_check, RuleCheckConfig,
};
use clogic_core::corpus::{
    self, corpus_language, find_loop_violating_c_logic, random_quantum_instance,
    standard_c_logic_corpus, uniform_table, GeneratorMode,
};
use clogic_core::formula::ClosedLanguage;
use clogic_core::klm::{
    check_cn_via_maximal, check_maxcons_classical, klm_relation_checks, klm_to_consequence,
    ValuationClassRelation, ValuationLanguage, ValuationOp,
};
use clogic_core::lang::AtomSet;
use clogic_core::quantum::{check_bca, orthocomplement, project, quantum_table, residual_norm};
use clogic_core::represent::represent;
use clogic_core::table::ConsequenceTable;
use clogic_core::theory::{check_cn_laws, theory_order};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 0x0acc_0001;
const CORPUS_FC: usize = 600;
const CORPUS_REJECTION: usize = 450;

fn conclude(number: u32, name: &str, pass: bool, budget_secs: f64, started: Instant, detail: &str) {
    let elapsed = started.elapsed().as_secs_f64();
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} [{status}] {name} ({elapsed:.2}s): {detail}");
    assert!(pass, "criterion {number} ({name}): {detail}");
    assert!(
        elapsed < budget_secs,
        "criterion {number} ({name}) exceeded its {budget_secs}s budget: {elapsed:.2}s"
    );
}

#[test]
fn criterion_1_derived_disjunction_counterexample() {
    let started = Instant::now();
    let reports = builtins::run_example(NamedExample::Disjunction);
    let pass = reports.iter().all(|r| r.holds);
    let detail = reports
        .iter()
        .map(|r| format!("{} {}", if r.holds { "ok" } else { "BAD" }, r.property))
        .collect::<Vec<_>>()
        .join("; ");
    conclude(
        1,
        "derived disjunction fails on the collapse model",
        pass,
        1.0,
        started,
        &detail,
    );
}

#[test]
fn criterion_2_orthocomplement_negation_failure() {
    let started = Instant::now();
    let reports = builtins::run_example(NamedExample::Negation);
    let mut pass = reports.iter().all(|r| r.holds);

    // Every negative membership decision on the extended instance must sit
    // at least 1e7 tolerances away from flipping.
    let q = builtins::generic_lines();
    let extended = q.with_atom("!b", orthocomplement(q.subspace(1))).unwrap();
    let lang = extended.atom_language();
    let tol = extended.tolerance();
    let mut min_margin = f64::INFINITY;
    for a in lang.subsets() {
        let projected = project(&extended.meet(a), extended.state());
        let scale = tol * projected.norm().max(1.0);
        for i in 0..extended.len() {
            let residual = residual_norm(extended.subspace(i), &projected);
            if residual > scale {
                min_margin = min_margin.min(residual / scale);
            }
        }
    }
    pass = pass && min_margin >= 1e7;

    let detail = format!(
        "{}; smallest negative-membership margin {min_margin:.3e}",
        reports
            .iter()
            .map(|r| format!("{} {}", if r.holds { "ok" } else { "BAD" }, r.property))
            .collect::<Vec<_>>()
            .join("; ")
    );
    conclude(
        2,
        "orthocomplement is no negation on generic lines",
        pass,
        1.0,
        started,
        &detail,
    );
}

#[test]
fn criterion_3_representation_round_trip_with_consistency_for_free() {
    let started = Instant::now();
    let corpus = standard_c_logic_corpus(CORPUS_SEED, CORPUS_FC, CORPUS_REJECTION);
    let (mut fc_seen, mut rejection_seen) = (0usize, 0usize);
    let mut failures: Vec<String> = Vec::new();

    for (i, (table, mode)) in corpus.iter().enumerate() {
        match mode {
            GeneratorMode::FcModel => fc_seen += 1,
            GeneratorMode::Rejection => rejection_seen += 1,
            GeneratorMode::Quantum => {}
        }
        let fcm = match represent(table) {
            Ok(fcm) => fcm,
            Err(e) => {
                failures.push(format!("instance {i}: rejected: {e}"));
                continue;
            }
        };
        if induced_consequence(&fcm) != *table {
            failures.push(format!("instance {i}: round trip not exact"));
            continue;
        }
        for report in [
            check_contraction(&fcm),
            check_local_cumulativity(&fcm),
            check_consistency(&fcm),
        ] {
            if !report.holds {
                failures.push(format!("instance {i}: {}", report.summary()));
            }
        }
    }

    let pass = failures.is_empty() && corpus.len() >= 1000 && fc_seen > 0 && rejection_seen > 0;
    let detail = format!(
        "{} tables ({fc_seen} sound-by-construction, {rejection_seen} rejection-sampled), \
         round trip exact and Contraction/Local Cumulativity/Consistency exhaustive on all; {}",
        corpus.len(),
        if failures.is_empty() {
            "no violations".to_string()
        } else {
            failures[..failures.len().min(3)].join(" | ")
        }
    );
    conclude(
        3,
        "representation round trip over the corpus",
        pass,
        60.0,
        started,
        &detail,
    );
}

#[test]
fn criterion_4_equivalent_axiomatizations_agree() {
    let started = Instant::now();
    let mut checked_exhaustive = 0usize;
    let mut mismatch: Option<String> = None;

    let agreement = |t: &ConsequenceTable| -> bool {
        let defining = check_inclusion(t).holds && check_cumulativity(t).holds;
        let idem_form = check_inclusion(t).holds
            && check_idempotence(t).holds
            && check_cautious_monotonicity(t).holds;
        let loop_form = check_inclusion(t).holds && check_two_loop(t).holds;
        defining == idem_form && defining == loop_form
    };

    // Exhaustive at two atoms: all (2^n)^(2^n) = 256 tables.
    let lang2 = corpus_language(2);
    let subsets = lang2.subset_count() as u32;
    let all_tables = subsets.pow(subsets);
    let mut rows = [AtomSet(0); 4];
    'outer: for code in 0..all_tables {
        let mut c = code;
        for r in rows.iter_mut() {
            *r = AtomSet(c % subsets);
            c /= subsets;
        }
        let t = ConsequenceTable::new(lang2.clone(), rows.to_vec()).unwrap();
        checked_exhaustive += 1;
        if !agreement(&t) {
            mismatch = Some(format!("two-atom table {:?}", rows));
            break 'outer;
        }
    }

    // Sampled at three atoms.
    let mut sampled = 0usize;
    if mismatch.is_none() {
        let lang3 = corpus_language(3);
        let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 4);
        for _ in 0..10_000 {
            let t = uniform_table(&lang3, &mut rng);
            sampled += 1;
            if !agreement(&t) {
                mismatch = Some("three-atom sample".to_string());
                break;
            }
        }
    }

    let pass = mismatch.is_none() && checked_exhaustive == all_tables as usize && sampled == 10_000;
    let detail = format!(
        "{checked_exhaustive} two-atom tables exhaustively, {sampled} uniform three-atom samples; {}",
        mismatch.unwrap_or_else(|| "all three axiomatizations agree".to_string())
    );
    conclude(
        4,
        "equivalent axiomatizations",
        pass,
        120.0,
        started,
        &detail,
    );
}

#[test]
fn criterion_5_subspace_instances_are_loop_free_and_projection_stable() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 5);
    let mut failures: Vec<String> = Vec::new();
    let count = 100;
    for i in 0..count {
        let q = random_quantum_instance(&mut rng, 4, 4);
        let table = quantum_table(&q);
        for report in check_c_axioms(&table) {
            if !report.holds {
                failures.push(format!("instance {i}: {}", report.summary()));
            }
        }
        let loop_report = check_loop(&table, 4).unwrap();
        if !loop_report.holds {
            failures.push(format!("instance {i}: {}", loop_report.summary()));
        }
        let bca = check_bca(&q);
        if !bca.holds {
            failures.push(format!("instance {i}: {}", bca.summary()));
        }
    }
    let pass = failures.is_empty();
    let detail = format!(
        "{count} random instances (dim <= 4, <= 4 subspaces): axioms, loop to length 4, \
         projection stability within 1e-9; {}",
        if pass { "all pass" } else { &failures[0] }
    );
    conclude(5, "random subspace instances", pass, 30.0, started, &detail);
}

#[test]
fn criterion_6_connective_rules_and_conservative_extension() {
    let started = Instant::now();
    let corpus = standard_c_logic_corpus(CORPUS_SEED, CORPUS_FC, CORPUS_REJECTION);
    let mut checked = 0usize;
    let mut failures: Vec<String> = Vec::new();

    for (i, (table, _)) in corpus.iter().enumerate() {
        if table.language().len() > 3 {
            continue;
        }
        checked += 1;
        let fcm = represent(table).expect("corpus tables are cumulative");
        let lang = ClosedLanguage::new(table.language().clone(), 2);
        let config = RuleCheckConfig::default_for(&lang);
        let rules = check_connective_rules(&fcm, &lang, &config);
        for report in &rules[..4] {
            if !report.holds {
                failures.push(format!("instance {i}: {}", report.summary()));
            }
        }
        let ext = conservative_extension_check(table, 2).unwrap();
        if !ext.holds {
            failures.push(format!("instance {i}: {}", ext.summary()));
        }
    }

    let pass = failures.is_empty() && checked > 0;
    let detail = format!(
        "{checked} corpus tables at <= 3 atoms, depth-2 closure: ∧-R, ¬-R1, ¬-R2, ∨-R1 \
         on all bounded instances and P ∩ C'(A) = C(A); {}",
        if pass { "all pass" } else { &failures[0] }
    );
    conclude(
        6,
        "connective rules and conservative extension",
        pass,
        60.0,
        started,
        &detail,
    );
}

#[test]
fn criterion_7_cn_laws_across_the_corpus() {
    let started = Instant::now();
    let corpus = standard_c_logic_corpus(CORPUS_SEED, CORPUS_FC, CORPUS_REJECTION);
    let mut failures = 0usize;
    let mut first = String::new();
    for (i, (table, _)) in corpus.iter().enumerate() {
        let report = check_cn_laws(table);
        if !report.holds {
            failures += 1;
            if first.is_empty() {
                first = format!("instance {i}: {}", report.summary());
            }
        }
    }
    let pass = failures == 0;
    let detail = format!(
        "{} tables: squeeze, absorption, monotone + idempotent Cn, inconsistency iff Cn = L; {}",
        corpus.len(),
        if pass { "zero violations" } else { &first }
    );
    conclude(7, "Cn laws", pass, 60.0, started, &detail);
}

#[test]
fn criterion_8_loop_order_and_a_strict_counterexample() {
    let started = Instant::now();
    let corpus = standard_c_logic_corpus(CORPUS_SEED, CORPUS_FC, CORPUS_REJECTION);
    let mut order_failures = 0usize;
    let mut loop_free = 0usize;
    for (table, _) in &corpus {
        let loop_report = check_loop(table, 4).unwrap();
        if loop_report.holds {
            loop_free += 1;
            let poset = theory_order(table);
            if !poset.check_lt_plus_irreflexive(table).holds
                || !poset.check_leq_cycles_collapse(table, 4).holds
            {
                order_failures += 1;
            }
        }
    }

    // The search must turn up a cumulative table with a genuine length-3
    // loop violation, replayable from its witness.
    let found = find_loop_violating_c_logic(CORPUS_SEED ^ 8, 3, 5000);
    let search_ok = match &found {
        None => false,
        Some((table, report, _)) => {
            let cycle: Vec<AtomSet> = report
                .witness
                .as_ref()
                .map(|w| w.masks().iter().map(|&m| AtomSet(m)).collect())
                .unwrap_or_default();
            check_inclusion(table).holds
                && check_cumulativity(table).holds
                && replay_cycle(table, &cycle)
        }
    };

    let pass = order_failures == 0 && search_ok;
    let inspected = found.as_ref().map(|(_, _, n)| *n).unwrap_or(0);
    let detail = format!(
        "{loop_free} loop-free corpus tables have an irreflexive strict order; \
         search found a cumulative non-loop table after {inspected} candidates \
         (witness replays: {search_ok})"
    );
    conclude(
        8,
        "theory order and loop separation",
        pass,
        120.0,
        started,
        &detail,
    );
}

#[test]
fn criterion_9_cumulative_relation_bridge() {
    let started = Instant::now();
    let lang = ValuationLanguage::new(2).unwrap();
    let mut ops: Vec<ValuationOp> = Vec::new();
    // Every rank function over the four valuations, exhaustively.
    for code in 0..256usize {
        let ranks: Vec<u32> = (0..4).map(|i| ((code >> (2 * i)) & 3) as u32).collect();
        ops.push(ValuationOp::Ranked { lang, ranks });
    }
    for v in 0..4 {
        ops.push(ValuationOp::SingleValuation { lang, valuation: v });
    }
    ops.push(ValuationOp::Entailment { lang });

    let mut failures: Vec<String> = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        let rel = ValuationClassRelation::from_op(op);
        for report in klm_relation_checks(&rel) {
            if !report.holds {
                failures.push(format!("op {i}: {}", report.summary()));
            }
        }
        let rec = match klm_to_consequence(&rel) {
            Ok(rec) => rec,
            Err(e) => {
                failures.push(format!("op {i}: {e}"));
                continue;
            }
        };
        for a in lang.formulas() {
            for b in lang.formulas() {
                if rec.holds(&[a], b) != rel.holds(a, b) {
                    failures.push(format!("op {i}: reconstruction differs on a singleton"));
                }
            }
        }
        let classical = check_maxcons_classical(op).unwrap();
        let via_max = check_cn_via_maximal(op).unwrap();
        if !classical.holds {
            failures.push(format!("op {i}: {}", classical.summary()));
        }
        if !via_max.holds {
            failures.push(format!("op {i}: {}", via_max.summary()));
        }
    }

    let pass = failures.is_empty();
    let detail = format!(
        "{} conforming operations at two atoms: five rules, singleton-exact reconstruction, \
         classical maximal consistent sets, Cn via maximal supersets; {}",
        ops.len(),
        if pass { "all pass" } else { &failures[0] }
    );
    conclude(
        9,
        "cumulative relation bridge",
        pass,
        30.0,
        started,
        &detail,
    );
}

#[test]
fn corpus_battery_smoke_for_each_mode() {
    // Not a numbered criterion: the battery the CLI exposes must run clean on
    // small corpora in every mode.
    for mode in [
        GeneratorMode::FcModel,
        GeneratorMode::Rejection,
        GeneratorMode::Quantum,
    ] {
        let spec = corpus::CorpusSpec {
            seed: 7,
            atoms: 3,
            count: 20,
            mode,
        };
        let reports = corpus::run_corpus_battery(&spec).unwrap();
        assert!(reports[0].holds, "{mode}: {}", reports[0].summary());
    }
}
