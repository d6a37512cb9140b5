//! Command-line front end: load JSON instances, run the checkers, emit a
//! machine-readable report on stdout and a human summary on stderr.
//!
//! Exit codes: 0 when every check came out as expected, 1 when a check
//! failed, 2 on malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use clogic_core::axioms::{check_c_axioms, check_loop, weak_compactness_report};
use clogic_core::builtins::NamedExample;
use clogic_core::choice::{
    check_consistency, check_contraction, check_local_cumulativity, induced_consequence, FCModel,
};
use clogic_core::connectives::{
    check_connective_rules, classical_implication_checks, extended_consequence, RuleCheckConfig,
};
use clogic_core::corpus::{CorpusSpec, GeneratorMode, RNG_ALGORITHM};
use clogic_core::error::Error;
use clogic_core::formula::{parse_formula, ClosedLanguage};
use clogic_core::quantum::{check_bca, quantum_table, QuantumInstance};
use clogic_core::represent::represent;
use clogic_core::table::ConsequenceTable;
use clogic_core::theory::{theories, theory_order};
use clogic_core::PropertyReport;

#[derive(Parser)]
#[command(
    name = "clogic",
    version,
    about = "Checkers for finite nonmonotonic consequence operations"
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a consequence table: axioms, bounded loop, theories, order.
    Check {
        input: PathBuf,
        /// Largest loop length to scan.
        #[arg(long, default_value_t = 4)]
        max_loop: usize,
    },
    /// Build the representing choice-function model and verify the round trip.
    Represent { input: PathBuf },
    /// Induce the consequence table of a subspace instance and check it.
    Quantum {
        input: PathBuf,
        /// Membership tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 4)]
        max_loop: usize,
    },
    /// Run the connective rule suite on a choice-function model.
    Connectives {
        input: PathBuf,
        /// Depth bound of the formula closure.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Premise formulas (text syntax: atoms, `&`, `!`, `|`, parentheses);
        /// the report then carries their consequences within the closure.
        #[arg(long)]
        premise: Vec<String>,
    },
    /// Reproduce a named counterexample: disjunction, negation or coherence.
    Examples { name: String },
    /// Generate a seeded corpus and run the cross-module invariant battery.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Generator: fc-model, rejection or quantum.
        #[arg(long, default_value = "fc-model")]
        mode: String,
    },
}

/// The report document emitted by every command.
#[derive(Debug, Serialize, Deserialize)]
struct RunReport {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rng: Option<String>,
    reports: Vec<PropertyReport>,
    overall: String,
    /// Omitted for seeded corpus runs so identical seeds give identical bytes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    wall_time_ms: Option<u64>,
    /// Constructed artifact: the model of `represent`, the table of `quantum`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    artifact: Option<serde_json::Value>,
}

impl RunReport {
    fn new(command: &str, reports: Vec<PropertyReport>) -> Self {
        let overall = if reports.iter().all(|r| r.holds) {
            "pass"
        } else {
            "fail"
        };
        RunReport {
            command: command.to_string(),
            input_digest: None,
            seed: None,
            rng: None,
            reports,
            overall: overall.to_string(),
            wall_time_ms: None,
            artifact: None,
        }
    }

    fn passed(&self) -> bool {
        self.overall == "pass"
    }
}

fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

fn read_input(path: &PathBuf) -> Result<(String, String), Error> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Schema(clogic_core::SchemaError::Json(format!(
            "cannot read {}: {e}",
            path.display()
        )))
    })?;
    let hash = digest(text.as_bytes());
    Ok((text, hash))
}

fn cmd_check(input: &PathBuf, max_loop: usize) -> Result<RunReport, Error> {
    let (text, hash) = read_input(input)?;
    let table = ConsequenceTable::from_json_str(&text)?;
    let mut reports = check_c_axioms(&table);
    reports.push(check_loop(&table, max_loop)?);
    reports.push(weak_compactness_report());
    let poset = theory_order(&table);
    reports.push(poset.check_lt_plus_irreflexive(&table));
    reports.push(poset.check_leq_cycles_collapse(&table, max_loop));
    let consistent = theories(&table, true).len();
    let all = theories(&table, false).len();
    let mut run = RunReport::new("check", reports);
    run.input_digest = Some(hash);
    run.artifact = Some(serde_json::json!({
        "theories": all,
        "consistent_theories": consistent,
    }));
    Ok(run)
}

fn cmd_represent(input: &PathBuf) -> Result<RunReport, Error> {
    let (text, hash) = read_input(input)?;
    let table = ConsequenceTable::from_json_str(&text)?;
    let mut run = match represent(&table) {
        Err(Error::NotACLogic { axiom }) => {
            let report = PropertyReport {
                property: format!("representation requires {axiom}"),
                holds: false,
                witness: None,
                note: Some(format!("input fails {axiom}")),
            };
            RunReport::new("represent", vec![report])
        }
        Err(e) => return Err(e),
        Ok(fcm) => {
            let round_trip = induced_consequence(&fcm) == table;
            let mut reports = vec![PropertyReport {
                property: "round trip".to_string(),
                holds: round_trip,
                witness: None,
                note: Some(format!(
                    "{} models (consistent theories)",
                    fcm.world().model_count()
                )),
            }];
            reports.push(check_contraction(&fcm));
            reports.push(check_local_cumulativity(&fcm));
            reports.push(check_consistency(&fcm));
            let mut run = RunReport::new("represent", reports);
            run.artifact = Some(fcm.to_json());
            run
        }
    };
    run.input_digest = Some(hash);
    Ok(run)
}

fn cmd_quantum(input: &PathBuf, tol: Option<f64>, max_loop: usize) -> Result<RunReport, Error> {
    let (text, hash) = read_input(input)?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Schema(clogic_core::SchemaError::Json(e.to_string())))?;
    if let (Some(t), Some(obj)) = (tol, value.as_object_mut()) {
        obj.insert("tolerance".into(), serde_json::json!(t));
    }
    let instance = QuantumInstance::from_json(&value)?;
    let table = quantum_table(&instance);
    let mut reports = check_c_axioms(&table);
    reports.push(check_loop(&table, max_loop)?);
    reports.push(check_bca(&instance));
    let mut run = RunReport::new("quantum", reports);
    run.input_digest = Some(hash);
    run.artifact = Some(table.to_json());
    Ok(run)
}

fn cmd_connectives(input: &PathBuf, depth: usize, premise: &[String]) -> Result<RunReport, Error> {
    let (text, hash) = read_input(input)?;
    let fcm = FCModel::from_json_str(&text)?;
    let lang = ClosedLanguage::new(fcm.world().language().clone(), depth);
    let config = RuleCheckConfig::default_for(&lang);
    // The three axioms the rule package relies on; Coherence and Local
    // Monotonicity are intentionally not part of the contract.
    let mut reports = vec![
        check_contraction(&fcm),
        check_local_cumulativity(&fcm),
        check_consistency(&fcm),
    ];
    reports.extend(check_connective_rules(&fcm, &lang, &config));
    reports.push(classical_implication_checks(&fcm, &lang, &config));
    let mut run = RunReport::new("connectives", reports);
    run.input_digest = Some(hash);
    if !premise.is_empty() {
        let parsed = premise
            .iter()
            .map(|p| parse_formula(p, fcm.world().language()))
            .collect::<Result<Vec<_>, _>>()?;
        let ids = extended_consequence(&fcm, &lang, &parsed);
        let rendered: Vec<String> = ids
            .iter()
            .map(|&i| lang.formula(i).render(lang.base()))
            .collect();
        run.artifact = Some(serde_json::json!({
            "premise": premise,
            "consequences": rendered,
        }));
    }
    Ok(run)
}

fn cmd_examples(name: &str) -> Result<RunReport, Error> {
    let which: NamedExample = name.parse()?;
    let reports = clogic_core::builtins::run_example(which);
    Ok(RunReport::new(&format!("examples {name}"), reports))
}

fn cmd_random(seed: u64, atoms: usize, count: usize, mode: &str) -> Result<RunReport, Error> {
    let spec = CorpusSpec {
        seed,
        atoms,
        count,
        mode: mode.parse::<GeneratorMode>()?,
    };
    let reports = clogic_core::corpus::run_corpus_battery(&spec)?;
    let mut run = RunReport::new("random", reports);
    run.seed = Some(seed);
    run.rng = Some(RNG_ALGORITHM.to_string());
    Ok(run)
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Schema(_)
            | Error::LoopBoundTooSmall(_)
            | Error::BadCorpusSpec(_)
            | Error::ZeroState
            | Error::DimMismatch { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let timed = !matches!(cli.command, Command::Random { .. });
    let result = match &cli.command {
        Command::Check { input, max_loop } => cmd_check(input, *max_loop),
        Command::Represent { input } => cmd_represent(input),
        Command::Quantum {
            input,
            tol,
            max_loop,
        } => cmd_quantum(input, *tol, *max_loop),
        Command::Connectives {
            input,
            depth,
            premise,
        } => cmd_connectives(input, *depth, premise),
        Command::Examples { name } => cmd_examples(name),
        Command::Random {
            seed,
            atoms,
            count,
            mode,
        } => cmd_random(*seed, *atoms, *count, mode),
    };

    let mut run = match result {
        Ok(run) => run,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_input_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            };
        }
    };
    if timed {
        run.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    }

    for report in &run.reports {
        eprintln!("{}", report.summary());
    }
    eprintln!("overall: {}", run.overall);

    let json = serde_json::to_string_pretty(&run).expect("report serializes");
    match &cli.report {
        None => println!("{json}"),
        Some(path) => {
            if let Err(e) = fs::write(path, json) {
                eprintln!("error: cannot write report to {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }

    if run.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
