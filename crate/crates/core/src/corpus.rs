//! Seeded instance generators and the cross-module invariant battery.
//!
//! Everything is driven by a single 64-bit seed through one named stream
//! cipher generator, so a seed fully determines a corpus and its report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::fmt;
use std::str::FromStr;

use crate::axioms::{self, check_c_axioms, check_loop, replay_axiom};
use crate::choice::{
    check_consistency, check_contraction, check_local_cumulativity, induced_consequence,
    ChoiceFunction, FCModel,
};
use crate::connectives::{check_connective_rules, conservative_extension_check, RuleCheckConfig};
use crate::error::Error;
use crate::formula::ClosedLanguage;
use crate::lang::{AtomLanguage, AtomSet};
use crate::quantum::{
    check_bca, check_conjunction_as_intersection, orthonormalize, quantum_table, QuantumInstance,
    Vector, DEFAULT_TOLERANCE,
};
use crate::report::PropertyReport;
use crate::represent::{closure_matches_cn, represent};
use crate::table::ConsequenceTable;
use crate::theory::{check_cn_laws, theory_order};
use crate::world::{ModelMask, ModelWorld};

/// Identifier of the seeded generator, recorded in reports.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Worlds in generated models stay small; exhaustive choice scans then cost
/// at most 3^6 pairs per instance.
pub const MAX_GENERATED_MODELS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Sound by construction: a random world with a rank-minimizing choice
    /// function, flattened to an explicit table.
    FcModel,
    /// Uniform rows over supersets of each subset, filtered through the
    /// axiom checks; rejected candidates exercise witness replay.
    Rejection,
    /// Random subspace instances.
    Quantum,
}

impl GeneratorMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorMode::FcModel => "fc-model",
            GeneratorMode::Rejection => "rejection",
            GeneratorMode::Quantum => "quantum",
        }
    }
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fc-model" => Ok(GeneratorMode::FcModel),
            "rejection" => Ok(GeneratorMode::Rejection),
            "quantum" => Ok(GeneratorMode::Quantum),
            other => Err(Error::BadCorpusSpec(format!(
                "unknown generator mode {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub seed: u64,
    pub atoms: usize,
    pub count: usize,
    pub mode: GeneratorMode,
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.atoms == 0 || self.atoms > 8 {
            return Err(Error::BadCorpusSpec(format!(
                "atom count must be 1..=8 for exhaustive suites, got {}",
                self.atoms
            )));
        }
        if self.count == 0 || self.count > 1_000_000 {
            return Err(Error::BadCorpusSpec(format!(
                "instance count must be 1..=1000000, got {}",
                self.count
            )));
        }
        Ok(())
    }
}

/// Letters a, b, c, ... as atom names.
pub fn corpus_language(atoms: usize) -> AtomLanguage {
    AtomLanguage::new((0..atoms).map(|i| ((b'a' + i as u8) as char).to_string()))
        .expect("corpus atom counts are validated")
}

/// Every row drawn uniformly from all subsets.
pub fn uniform_table(lang: &AtomLanguage, rng: &mut ChaCha8Rng) -> ConsequenceTable {
    let top = lang.subset_count() as u32;
    ConsequenceTable::from_fn(lang.clone(), |_| AtomSet(rng.random_range(0..top)))
}

/// Uniform among tables already satisfying Inclusion: each row is its subset
/// joined with uniformly chosen extra atoms.
pub fn inclusion_seeded_table(lang: &AtomLanguage, rng: &mut ChaCha8Rng) -> ConsequenceTable {
    let top = lang.subset_count() as u32;
    ConsequenceTable::from_fn(lang.clone(), |a| a.union(AtomSet(rng.random_range(0..top))))
}

/// Rejection-samples a cumulative table. Returns the table and the number of
/// candidates drawn. Every rejected candidate's witness is replayed; a
/// witness that fails to re-violate its axiom is an internal error.
pub fn sample_c_logic(
    lang: &AtomLanguage,
    rng: &mut ChaCha8Rng,
    max_attempts: u64,
) -> Result<(ConsequenceTable, u64), Error> {
    for attempt in 1..=max_attempts {
        let candidate = inclusion_seeded_table(lang, rng);
        let reports = check_c_axioms(&candidate);
        if reports.iter().all(|r| r.holds) {
            return Ok((candidate, attempt));
        }
        for report in reports.iter().filter(|r| !r.holds) {
            let masks = report
                .witness
                .as_ref()
                .map(|w| w.masks())
                .unwrap_or_default();
            if !replay_axiom(&candidate, &report.property, &masks) {
                return Err(Error::BadCorpusSpec(format!(
                    "witness for {} failed to replay",
                    report.property
                )));
            }
        }
    }
    Err(Error::BadCorpusSpec(format!(
        "no cumulative table found in {max_attempts} attempts"
    )))
}

/// A random world with a rank-minimizing choice function: each model gets a
/// rank, f(X) keeps the minimal-rank members of X. Such a function satisfies
/// Contraction, Local Cumulativity and Consistency on every subset, so the
/// induced table is cumulative by construction. The function is flattened
/// into explicit entries.
pub fn random_fc_model(lang: &AtomLanguage, rng: &mut ChaCha8Rng) -> FCModel {
    let model_count = rng.random_range(1..=MAX_GENERATED_MODELS);
    let top = lang.subset_count() as u32;
    let models: Vec<(String, AtomSet)> = (0..model_count)
        .map(|i| (format!("w{i}"), AtomSet(rng.random_range(0..top))))
        .collect();
    let world = ModelWorld::new(lang.clone(), models).expect("bounded world");
    let ranks: Vec<u32> = (0..model_count)
        .map(|_| rng.random_range(0..model_count as u32))
        .collect();

    let mut entries: Vec<(ModelMask, ModelMask)> = Vec::new();
    for x in world.masks() {
        let min = x.iter().map(|i| ranks[i]).min();
        if let Some(min) = min {
            let mut chosen = ModelMask::EMPTY;
            for i in x.iter() {
                if ranks[i] == min {
                    chosen = chosen.insert(i);
                }
            }
            if chosen != x {
                entries.push((x, chosen));
            }
        }
    }
    FCModel::new(world, ChoiceFunction::table(entries), true)
}

/// A random instance: dimension up to `max_dim`, up to `max_atoms` named
/// subspaces of arbitrary rank spanned by Gaussian vectors, state kept well
/// away from zero.
pub fn random_quantum_instance(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    max_atoms: usize,
) -> QuantumInstance {
    let dim = rng.random_range(1..=max_dim);
    let atoms = rng.random_range(1..=max_atoms);
    let normal = StandardNormal;
    let gaussian =
        |rng: &mut ChaCha8Rng| -> Vector { Vector((0..dim).map(|_| normal.sample(rng)).collect()) };
    let state = loop {
        let v = gaussian(rng);
        if v.norm() > 0.1 {
            break v;
        }
    };
    let mut language = Vec::new();
    for i in 0..atoms {
        let rank = rng.random_range(0..=dim);
        let spanning: Vec<Vector> = (0..rank).map(|_| gaussian(rng)).collect();
        let subspace = orthonormalize(dim, &spanning).expect("dims agree");
        language.push((((b'a' + i as u8) as char).to_string(), subspace));
    }
    QuantumInstance::new(state, language, DEFAULT_TOLERANCE).expect("state is nonzero")
}

/// The mixed corpus the cross-module sweeps run on: sound-by-construction
/// instances at 2..=4 atoms and rejection-sampled ones at 2..=3 atoms.
pub fn standard_c_logic_corpus(
    seed: u64,
    fc_count: usize,
    rejection_count: usize,
) -> Vec<(ConsequenceTable, GeneratorMode)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(fc_count + rejection_count);
    for i in 0..fc_count {
        let lang = corpus_language(2 + i % 3);
        let fcm = random_fc_model(&lang, &mut rng);
        out.push((induced_consequence(&fcm), GeneratorMode::FcModel));
    }
    for i in 0..rejection_count {
        let lang = corpus_language(2 + i % 2);
        let (table, _) = sample_c_logic(&lang, &mut rng, 1_000_000)
            .expect("rejection sampling at three atoms succeeds");
        out.push((table, GeneratorMode::Rejection));
    }
    out
}

/// Searches rejection-sampled cumulative tables for one that fails the loop
/// check at length 3. Returns the table, the failing report, and how many
/// cumulative tables were inspected.
pub fn find_loop_violating_c_logic(
    seed: u64,
    atoms: usize,
    max_candidates: u64,
) -> Option<(ConsequenceTable, PropertyReport, u64)> {
    let lang = corpus_language(atoms);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for inspected in 1..=max_candidates {
        let (table, _) = sample_c_logic(&lang, &mut rng, 1_000_000).ok()?;
        let report = check_loop(&table, 3).expect("bound is valid");
        if !report.holds {
            return Some((table, report, inspected));
        }
    }
    None
}

fn fail(failures: &mut Vec<PropertyReport>, instance: usize, what: &str, detail: String) {
    failures.push(PropertyReport {
        property: format!("instance {instance}: {what}"),
        holds: false,
        witness: None,
        note: Some(detail),
    });
}

/// The invariants every table must satisfy, across modules: soundness of the
/// axioms, exact representation round trip, the three choice axioms on the
/// representation, the Cn laws, the closure identity, and the theory-order
/// consequences of the loop check. Small tables also run the connective
/// rules and the conservative extension.
pub fn table_battery(
    table: &ConsequenceTable,
    instance: usize,
    failures: &mut Vec<PropertyReport>,
) {
    for report in check_c_axioms(table) {
        if !report.holds {
            fail(failures, instance, "axioms", report.summary());
            return;
        }
    }
    let fcm = match represent(table) {
        Ok(fcm) => fcm,
        Err(e) => {
            fail(failures, instance, "representation", e.to_string());
            return;
        }
    };
    if induced_consequence(&fcm) != *table {
        fail(
            failures,
            instance,
            "round trip",
            "induced table differs".into(),
        );
        return;
    }
    for report in [
        check_contraction(&fcm),
        check_local_cumulativity(&fcm),
        check_consistency(&fcm),
    ] {
        if !report.holds {
            fail(failures, instance, "choice axioms", report.summary());
            return;
        }
    }
    if !closure_matches_cn(table, &fcm) {
        fail(
            failures,
            instance,
            "closure vs Cn",
            "bar(hat(A)) != Cn(A)".into(),
        );
        return;
    }
    let cn_report = check_cn_laws(table);
    if !cn_report.holds {
        fail(failures, instance, "Cn laws", cn_report.summary());
        return;
    }

    let loop_report = check_loop(table, 4).expect("bound is valid");
    let poset = theory_order(table);
    if loop_report.holds {
        let irr = poset.check_lt_plus_irreflexive(table);
        let collapse = poset.check_leq_cycles_collapse(table, 4);
        if !irr.holds || !collapse.holds {
            fail(
                failures,
                instance,
                "theory order",
                "loop holds but the order has cycles".into(),
            );
            return;
        }
    } else {
        let masks = loop_report
            .witness
            .as_ref()
            .map(|w| w.masks())
            .unwrap_or_default();
        let cycle: Vec<AtomSet> = masks.iter().map(|&m| AtomSet(m)).collect();
        if !axioms::replay_cycle(table, &cycle) {
            fail(
                failures,
                instance,
                "loop witness",
                "cycle does not replay".into(),
            );
            return;
        }
    }

    if table.language().len() <= 3 {
        let lang = ClosedLanguage::new(table.language().clone(), 2);
        let config = RuleCheckConfig::default_for(&lang);
        let rules = check_connective_rules(&fcm, &lang, &config);
        for report in &rules[..4] {
            if !report.holds {
                fail(failures, instance, "connective rules", report.summary());
                return;
            }
        }
        for depth in [1, 2] {
            match conservative_extension_check(table, depth) {
                Ok(report) if report.holds => {}
                Ok(report) => {
                    fail(
                        failures,
                        instance,
                        "conservative extension",
                        report.summary(),
                    );
                    return;
                }
                Err(e) => {
                    fail(failures, instance, "conservative extension", e.to_string());
                    return;
                }
            }
        }
    }
}

/// The invariants for a subspace instance: the induced table is cumulative
/// and loop-free, projections are stable under consequence, the Cn laws
/// hold, the theory order is acyclic, and intersection plays conjunction.
pub fn quantum_battery(q: &QuantumInstance, instance: usize, failures: &mut Vec<PropertyReport>) {
    let table = quantum_table(q);
    for report in check_c_axioms(&table) {
        if !report.holds {
            fail(failures, instance, "axioms", report.summary());
            return;
        }
    }
    let loop_report = check_loop(&table, 4).expect("bound is valid");
    if !loop_report.holds {
        fail(failures, instance, "loop", loop_report.summary());
        return;
    }
    let bca = check_bca(q);
    if !bca.holds {
        fail(failures, instance, "projection stability", bca.summary());
        return;
    }
    let cn_report = check_cn_laws(&table);
    if !cn_report.holds {
        fail(failures, instance, "Cn laws", cn_report.summary());
        return;
    }
    let poset = theory_order(&table);
    if !poset.check_lt_plus_irreflexive(&table).holds {
        fail(
            failures,
            instance,
            "theory order",
            "<+ has a diagonal".into(),
        );
        return;
    }
    match check_conjunction_as_intersection(q) {
        Ok(report) if report.holds => {}
        Ok(report) => fail(failures, instance, "conjunction", report.summary()),
        Err(e) => fail(failures, instance, "conjunction", e.to_string()),
    }
}

/// Generates a corpus from the spec and runs the battery on every instance.
/// The first report summarizes pass counts; any failures follow, capped at
/// ten. Identical specs produce identical reports.
pub fn run_corpus_battery(spec: &CorpusSpec) -> Result<Vec<PropertyReport>, Error> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let lang = corpus_language(spec.atoms);
    let mut failures: Vec<PropertyReport> = Vec::new();
    let mut extra_note = String::new();

    match spec.mode {
        GeneratorMode::FcModel => {
            for i in 0..spec.count {
                let fcm = random_fc_model(&lang, &mut rng);
                let table = induced_consequence(&fcm);
                table_battery(&table, i, &mut failures);
            }
        }
        GeneratorMode::Rejection => {
            let mut attempts_total: u64 = 0;
            for i in 0..spec.count {
                let (table, attempts) = sample_c_logic(&lang, &mut rng, 1_000_000)?;
                attempts_total += attempts;
                table_battery(&table, i, &mut failures);
            }
            extra_note = format!(
                "; acceptance rate {:.4}",
                spec.count as f64 / attempts_total as f64
            );
        }
        GeneratorMode::Quantum => {
            for i in 0..spec.count {
                let q = random_quantum_instance(&mut rng, 4, spec.atoms);
                quantum_battery(&q, i, &mut failures);
            }
        }
    }

    let failed = failures.len();
    let summary = PropertyReport {
        property: format!(
            "corpus battery: mode {}, {} atoms, {} instances",
            spec.mode, spec.atoms, spec.count
        ),
        holds: failed == 0,
        witness: None,
        note: Some(format!(
            "seed {}, rng {RNG_ALGORITHM}, {} passed, {} failed{}",
            spec.seed,
            spec.count - failed.min(spec.count),
            failed,
            extra_note
        )),
    };
    let mut reports = vec![summary];
    failures.truncate(10);
    reports.extend(failures);
    Ok(reports)
}
