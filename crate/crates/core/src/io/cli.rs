//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand, writes the report and returns the process exit code:
//! 0 on success, 1 on invalid input (error JSON on stderr), 2 when a fit
//! does not converge (the report is still written).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::dataset::{load_dataset, parse_dataset, Dataset, DatasetKind, Payload};
use super::report::{Report, Sweep};
use crate::bloch::membrane::{universal_measurement_probability, RhoMembrane};
use crate::bloch::model::model_from_report;
use crate::bloch::replicability::exact_sequence_distribution;
use crate::bloch::{fit_membrane, simulate_replicability, MembraneTwoQuestionModel, MemoryPolicy};
use crate::error::{Error, Result};
use crate::fock::occupation::DEFAULT_CONFIGURATION_CAP;
use crate::fock::{
    chsh_value, classify_extension, fock_combination_weight, identical_concepts_distributions,
    kolmogorov_representable, mean_classical_deviation, solve_fock_parameters, FockSolution,
    JointCorrelationSet,
};
use crate::order::{
    compute_q, compute_q_prime, conditional_probabilities, fit_hilbert_2d, FitConfig, FitReport,
    OrderProbabilities, SequentialTable,
};
use crate::rng::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "qcog", version, about = "Quantum-cognition measurement models and diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Policy {
    Memory,
    Memoryless,
}

#[derive(Debug, Args)]
struct Common {
    /// Input dataset; the bundled example for the command is used if omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Report path; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write per-row data as CSV to this path.
    #[arg(long)]
    emit_sweep: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    common: Common,
    /// Fits whose residual exceeds this count as not converged.
    #[arg(long)]
    tol: Option<f64>,
    /// Number of random starting points.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// q, q', conditionals and marginals of a sequential table.
    Diagnose {
        #[command(flatten)]
        common: Common,
    },
    /// Best two-dimensional rank-one Hilbert model for a sequential table.
    FitHilbert(FitArgs),
    /// Interval-membrane model for a sequential table.
    FitMembrane(FitArgs),
    /// Monte Carlo replicability of a question sequence.
    SimulateReplicability(ReplicabilityArgs),
    /// Average collapse probability over random membranes against the Born value.
    Universal {
        #[command(flatten)]
        common: Common,
        /// Membranes sampled per grid point.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Grid points evenly spaced on [-1, 1].
        #[arg(long, default_value_t = 11)]
        points: usize,
    },
    /// Classify and solve the two-sector Fock model per membership record.
    Fock {
        #[command(flatten)]
        common: Common,
    },
    /// CHSH value of four joint tables.
    Chsh {
        #[command(flatten)]
        common: Common,
    },
    /// Maxwell-Boltzmann and Bose-Einstein occupation distributions.
    StatsBeMb {
        #[command(flatten)]
        common: Common,
        /// Entities; with --m, overrides the input file.
        #[arg(long, requires = "m")]
        n: Option<usize>,
        /// Cells.
        #[arg(long, requires = "n")]
        m: Option<usize>,
        /// Largest configuration count enumerated.
        #[arg(long, default_value_t = DEFAULT_CONFIGURATION_CAP)]
        cap: u128,
    },
}

#[derive(Debug, Args)]
struct ReplicabilityArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated question labels.
    #[arg(long, default_value = "G,C,G", value_delimiter = ',')]
    sequence: Vec<String>,
    #[arg(long, default_value_t = 10_000)]
    participants: usize,
    #[arg(long, value_enum, default_value = "memory")]
    policy: Policy,
    /// Use the membrane model fitted to the sequential input instead of the
    /// explicit geometry below.
    #[arg(long)]
    fit: bool,
    /// Residual tolerance for --fit.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// The two question labels of the explicit model.
    #[arg(long, default_value = "C,G", value_delimiter = ',')]
    questions: Vec<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    e_a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    e_b: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    gamma: f64,
    /// `uniform` or an interval `a:b`.
    #[arg(long, default_value = "uniform", allow_hyphen_values = true)]
    membrane_a: String,
    #[arg(long, default_value = "uniform", allow_hyphen_values = true)]
    membrane_b: String,
}

struct Outcome {
    report: Report,
    sweep: Option<Sweep>,
    converged: bool,
}

/// Runs one command line (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = json!({"error": {"kind": "usage", "message": e.to_string().trim_end()}});
            let _ = writeln!(stderr, "{err}");
            return 1;
        }
    };
    let common = match &cli.command {
        Command::Diagnose { common }
        | Command::Universal { common, .. }
        | Command::Fock { common }
        | Command::Chsh { common }
        | Command::StatsBeMb { common, .. } => common,
        Command::FitHilbert(a) | Command::FitMembrane(a) => &a.common,
        Command::SimulateReplicability(a) => &a.common,
    };
    match execute(&cli.command).and_then(|o| emit(common, o, stdout)) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            1
        }
    }
}

fn emit(common: &Common, outcome: Outcome, stdout: &mut dyn Write) -> Result<bool> {
    let text = match common.format {
        Format::Json => outcome.report.to_json(),
        Format::Csv => outcome.report.to_csv()?,
    };
    match &common.output {
        Some(path) => write_file(path, text.as_bytes())?,
        None => stdout.write_all(text.as_bytes())?,
    }
    if let Some(path) = &common.emit_sweep {
        let sweep = outcome.sweep.unwrap_or_default();
        let mut buf = Vec::new();
        sweep.write(&mut buf)?;
        write_file(path, &buf)?;
    }
    Ok(outcome.converged)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::ZeroProbabilityOutcome { .. } => "zero_probability_outcome",
        Error::InvalidState(_) => "invalid_state",
        Error::InvalidProjector(_) => "invalid_projector",
        Error::InvalidFamily(_) => "invalid_family",
        Error::InvalidRanks { .. } => "invalid_ranks",
        Error::InvalidTable(_) => "invalid_table",
        Error::DegenerateMarginal { .. } => "degenerate_marginal",
        Error::NotAState { .. } => "not_a_state",
        Error::DegenerateFamily { .. } => "degenerate_family",
        Error::InvalidGeometry(_) => "invalid_geometry",
        Error::InconsistentGeometry(_) => "inconsistent_geometry",
        Error::CoordinateOutOfRange(_) => "coordinate_out_of_range",
        Error::InvalidMembrane(_) => "invalid_membrane",
        Error::InvalidRecord(_) => "invalid_record",
        Error::TooLarge { .. } => "too_large",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Schema { .. } => "schema",
        Error::Io(_) => "io",
    }
}

fn error_json(e: &Error) -> Value {
    let mut body = json!({"kind": error_kind(e), "message": e.to_string()});
    if let Error::Schema { source_path, index, .. } = e {
        body["source_path"] = json!(source_path);
        body["index"] = json!(index);
    }
    json!({ "error": body })
}

/// Loads `--input` or the bundled example, returning the raw bytes for the digest.
fn input(common: &Common, kind: DatasetKind) -> Result<(Dataset, Vec<u8>)> {
    match &common.input {
        Some(path) => {
            let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok((load_dataset(path, kind)?, bytes))
        }
        None => {
            let (name, text) = kind.bundled();
            Ok((parse_dataset(text, kind, name)?, text.as_bytes().to_vec()))
        }
    }
}

fn sequential(common: &Common) -> Result<(SequentialTable, Vec<u8>)> {
    let (d, bytes) = input(common, DatasetKind::Sequential)?;
    match d.payload {
        Payload::Sequential(t) => Ok((t, bytes)),
        _ => unreachable!("loaded as sequential"),
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Diagnose { common } => diagnose(common),
        Command::FitHilbert(a) => fit(a, "fit-hilbert"),
        Command::FitMembrane(a) => fit(a, "fit-membrane"),
        Command::SimulateReplicability(a) => replicability(a),
        Command::Universal { common, samples, points } => universal(common, *samples, *points),
        Command::Fock { common } => fock(common),
        Command::Chsh { common } => chsh(common),
        Command::StatsBeMb { common, n, m, cap } => stats_be_mb(common, *n, *m, *cap),
    }
}

fn order_value(o: &OrderProbabilities) -> Value {
    json!({"yy": o.yy, "yn": o.yn, "ny": o.ny, "nn": o.nn})
}

fn table_value(t: &SequentialTable) -> Value {
    let [a, b] = &t.questions;
    json!({
        "questions": [a, b],
        format!("order_{a}{b}"): order_value(&t.order_ab),
        format!("order_{b}{a}"): order_value(&t.order_ba),
    })
}

fn order_labels(t: &SequentialTable) -> [String; 2] {
    let [a, b] = &t.questions;
    [format!("{a}{b}"), format!("{b}{a}")]
}

fn diagnose(common: &Common) -> Result<Outcome> {
    let (table, bytes) = sequential(common)?;
    let mut report = Report::new("diagnose", &bytes, common.seed);
    let qp = compute_q_prime(&table);
    let cond = conditional_probabilities(&table)?;
    let [ab, ba] = order_labels(&table);
    let [a, b] = &table.questions;

    report.insert("q", compute_q(&table));
    report.insert("q_prime", qp.value);
    report.insert("q_prime_ratio_to_max", qp.ratio_to_max);
    report.insert("table", table_value(&table));
    report.insert(
        "marginals",
        json!({
            format!("P({a}y) asked first"): table.order_ab.first_yes(),
            format!("P({b}y) asked first"): table.order_ba.first_yes(),
            format!("P({b}y) asked second"): table.order_ab.yy + table.order_ab.ny,
            format!("P({a}y) asked second"): table.order_ba.yy + table.order_ba.ny,
        }),
    );
    let mut sweep = Sweep::new(&["order", "first", "second", "probability", "conditional"]);
    let mut conds = serde_json::Map::new();
    for (label, o, c) in [(&ab, &table.order_ab, &cond.order_ab), (&ba, &table.order_ba, &cond.order_ba)] {
        conds.insert(
            label.clone(),
            json!({
                "yes_given_yes": c.yes_given_yes,
                "no_given_yes": c.no_given_yes,
                "yes_given_no": c.yes_given_no,
                "no_given_no": c.no_given_no,
            }),
        );
        for (f, s, p, cv) in [
            ("y", "y", o.yy, c.yes_given_yes),
            ("y", "n", o.yn, c.no_given_yes),
            ("n", "y", o.ny, c.yes_given_no),
            ("n", "n", o.nn, c.no_given_no),
        ] {
            sweep.push(vec![label.clone(), f.into(), s.into(), p.to_string(), cv.to_string()]);
        }
    }
    report.insert("conditionals", Value::Object(conds));
    Ok(Outcome {
        report,
        sweep: Some(sweep),
        converged: true,
    })
}

fn fit_config(seed: u64, restarts: usize, tol: Option<f64>) -> Result<FitConfig> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("--restarts must be at least 1".into()));
    }
    if let Some(t) = tol {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidArgument(format!("--tol must be positive, got {t}")));
        }
    }
    Ok(FitConfig {
        starts: restarts,
        seed,
        tol,
        ..FitConfig::default()
    })
}

fn fit_results(report: &mut Report, fit: &FitReport, table: &SequentialTable) -> Sweep {
    let params: serde_json::Map<String, Value> =
        fit.parameters.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    report.insert("parameters", Value::Object(params));
    report.insert("residual", fit.residual);
    report.insert("converged", fit.converged);
    report.insert("iterations", fit.iterations as u64);
    report.insert("best_start", fit.best_start as u64);
    report.insert("predicted", table_value(&fit.predicted));
    report.insert("predicted_q", compute_q(&fit.predicted));
    report.insert("predicted_q_prime", compute_q_prime(&fit.predicted).value);

    let mut sweep = Sweep::new(&["order", "cell", "observed", "predicted"]);
    let [ab, ba] = order_labels(table);
    let cells = ["yy", "yn", "ny", "nn"];
    for (k, (obs, pred)) in table.entries().iter().zip(fit.predicted.entries()).enumerate() {
        let order = if k < 4 { &ab } else { &ba };
        sweep.push(vec![order.clone(), cells[k % 4].into(), obs.to_string(), pred.to_string()]);
    }
    sweep
}

fn fit(args: &FitArgs, command: &str) -> Result<Outcome> {
    let common = &args.common;
    let (table, bytes) = sequential(common)?;
    let config = fit_config(common.seed, args.restarts, args.tol)?;
    let fit = if command == "fit-hilbert" {
        fit_hilbert_2d(&table, &config)?
    } else {
        fit_membrane(&table, &config)?
    };
    let mut report = Report::new(command, &bytes, common.seed);
    report.insert("restarts", args.restarts as u64);
    if let Some(t) = args.tol {
        report.insert("tol", t);
    }
    let sweep = fit_results(&mut report, &fit, &table);
    Ok(Outcome {
        report,
        sweep: Some(sweep),
        converged: fit.converged,
    })
}

fn parse_membrane(text: &str) -> Result<RhoMembrane> {
    if text.eq_ignore_ascii_case("uniform") {
        return Ok(RhoMembrane::Uniform);
    }
    let bad = || Error::InvalidArgument(format!("membrane {text:?} is neither `uniform` nor `a:b`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    RhoMembrane::interval(a, b)
}

fn membrane_value(m: &RhoMembrane) -> Value {
    match m {
        RhoMembrane::Uniform => json!("uniform"),
        RhoMembrane::Interval { a, b } => json!({"interval": [a, b]}),
        RhoMembrane::PiecewiseConstant { breaks, weights } => {
            json!({"breaks": breaks, "weights": weights})
        }
    }
}

fn replicability(args: &ReplicabilityArgs) -> Result<Outcome> {
    let common = &args.common;
    let (model, bytes, converged) = if args.fit {
        let (table, bytes) = sequential(common)?;
        let config = fit_config(common.seed, args.restarts, args.tol)?;
        let fit = fit_membrane(&table, &config)?;
        (model_from_report(&fit, table.questions.clone())?, bytes, fit.converged)
    } else {
        let questions: [String; 2] = args
            .questions
            .clone()
            .try_into()
            .map_err(|_| Error::InvalidArgument("--questions needs exactly two labels".into()))?;
        let model = MembraneTwoQuestionModel::new(
            questions,
            args.e_a,
            args.e_b,
            args.gamma,
            parse_membrane(&args.membrane_a)?,
            parse_membrane(&args.membrane_b)?,
        )?;
        (model, Vec::new(), true)
    };
    let policy = match args.policy {
        Policy::Memory => MemoryPolicy::Memory,
        Policy::Memoryless => MemoryPolicy::Memoryless,
    };
    let sequence: Vec<&str> = args.sequence.iter().map(String::as_str).collect();
    let stats = simulate_replicability(&model, &sequence, args.participants, policy, common.seed)?;
    let exact = exact_sequence_distribution(&model, &sequence, policy)?;

    let mut report = Report::new("simulate-replicability", &bytes, common.seed);
    report.insert(
        "model",
        json!({
            "questions": model.questions,
            "e_a": model.e_a,
            "e_b": model.e_b,
            "gamma": model.gamma,
            "membrane_a": membrane_value(&model.membrane_a),
            "membrane_b": membrane_value(&model.membrane_b),
        }),
    );
    report.insert("sequence", json!(stats.sequence));
    report.insert("participants", stats.participants as u64);
    report.insert(
        "policy",
        match policy {
            MemoryPolicy::Memory => "memory",
            MemoryPolicy::Memoryless => "memoryless",
        },
    );
    report.insert("counts", json!(stats.counts));
    report.insert("exact_distribution", json!(exact));
    let n = stats.participants as f64;
    let repeats: Vec<Value> = stats
        .repeats
        .iter()
        .map(|r| {
            let expected: f64 = exact
                .iter()
                .filter(|(k, _)| k.as_bytes()[r.first_position] == k.as_bytes()[r.second_position])
                .map(|(_, p)| p)
                .sum();
            json!({
                "question": r.question,
                "first_position": r.first_position,
                "second_position": r.second_position,
                "agreement": r.agreement,
                "exact_agreement": expected,
                "std_error": (expected * (1.0 - expected) / n).sqrt(),
            })
        })
        .collect();
    report.insert("repeats", Value::Array(repeats));

    let mut sweep = Sweep::new(&["answers", "count", "frequency", "exact"]);
    for (answers, p) in &exact {
        let count = stats.counts.get(answers).copied().unwrap_or(0);
        sweep.push(vec![
            answers.clone(),
            count.to_string(),
            stats.frequency(answers).to_string(),
            p.to_string(),
        ]);
    }
    Ok(Outcome {
        report,
        sweep: Some(sweep),
        converged,
    })
}

fn universal(common: &Common, samples: usize, points: usize) -> Result<Outcome> {
    if points < 2 {
        return Err(Error::InvalidArgument("--points must be at least 2".into()));
    }
    let mut report = Report::new("universal", &[], common.seed);
    let mut sweep = Sweep::new(&["e", "mean", "std_error", "born", "abs_diff"]);
    let mut rows = Vec::with_capacity(points);
    let mut max_diff: f64 = 0.0;
    for i in 0..points {
        let e = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        // Each grid point gets its own seed so points are independent.
        let est = universal_measurement_probability(e, samples, common.seed.wrapping_add(i as u64))?;
        let born = 0.5 * (1.0 + e);
        let diff = (est.mean - born).abs();
        max_diff = max_diff.max(diff);
        rows.push(json!({"e": e, "mean": est.mean, "std_error": est.std_error, "born": born, "abs_diff": diff}));
        sweep.push(vec![
            e.to_string(),
            est.mean.to_string(),
            est.std_error.to_string(),
            born.to_string(),
            diff.to_string(),
        ]);
    }
    report.insert("samples", samples as u64);
    report.insert("grid", Value::Array(rows));
    report.insert("max_abs_diff", max_diff);
    Ok(Outcome {
        report,
        sweep: Some(sweep),
        converged: true,
    })
}

fn fock(common: &Common) -> Result<Outcome> {
    let (d, bytes) = input(common, DatasetKind::Membership)?;
    let Payload::Membership(records) = d.payload else {
        unreachable!("loaded as membership")
    };
    let mut report = Report::new("fock", &bytes, common.seed);
    let mut sweep = Sweep::new(&[
        "item",
        "combination",
        "mu_a",
        "mu_b",
        "mu_comb",
        "extension",
        "representable",
        "theta",
        "m2",
        "reproduced",
    ]);
    let mut out = Vec::with_capacity(records.len());
    for r in &records {
        let ext = classify_extension(r);
        let rep = kolmogorov_representable(r);
        let violated: Vec<String> = rep.violated.iter().map(|b| format!("{b:?}")).collect();
        let mut row = json!({
            "item": r.item,
            "combination": r.combination.as_str(),
            "mu_a": r.mu_a,
            "mu_b": r.mu_b,
            "mu_comb": r.mu_comb,
            "extension": ext.as_str(),
            "kolmogorov_representable": rep.representable,
            "violated_bounds": violated,
        });
        let (theta, m2, reproduced) = match solve_fock_parameters(r) {
            FockSolution::Solved(p) => {
                let w = fock_combination_weight(r.mu_a, r.mu_b, &p, r.combination).value;
                row["fock"] = json!({"theta": p.theta(), "m2": p.m2(), "n2": p.n2(), "reproduced": w});
                (p.theta().to_string(), p.m2().to_string(), w.to_string())
            }
            FockSolution::Infeasible => {
                row["fock"] = json!("infeasible");
                (String::new(), String::new(), String::new())
            }
        };
        sweep.push(vec![
            r.item.clone(),
            r.combination.as_str().into(),
            r.mu_a.to_string(),
            r.mu_b.to_string(),
            r.mu_comb.to_string(),
            ext.as_str().into(),
            rep.representable.to_string(),
            theta,
            m2,
            reproduced,
        ]);
        out.push(row);
    }
    report.insert("records", Value::Array(out));
    if let Some(dev) = mean_classical_deviation(&records) {
        report.insert("mean_classical_deviation", dev);
    }
    Ok(Outcome {
        report,
        sweep: Some(sweep),
        converged: true,
    })
}

fn chsh(common: &Common) -> Result<Outcome> {
    let (d, bytes) = input(common, DatasetKind::Correlations)?;
    let Payload::Correlations(c) = d.payload else {
        unreachable!("loaded as correlations")
    };
    Ok(chsh_outcome(&c, &bytes, common.seed))
}

fn chsh_outcome(c: &JointCorrelationSet, bytes: &[u8], seed: u64) -> Outcome {
    let r = chsh_value(c);
    let mut report = Report::new("chsh", bytes, seed);
    let mut sweep = Sweep::new(&["setting", "expectation"]);
    let mut e = serde_json::Map::new();
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let key = format!("{}{}", i + 1, j + 1);
        e.insert(key.clone(), json!(c.e[i][j]));
        sweep.push(vec![key, c.e[i][j].to_string()]);
    }
    report.insert("expectations", Value::Object(e));
    report.insert("s", r.s);
    report.insert("violated", r.violated);
    report.insert("exceeds_tsirelson", r.exceeds_tsirelson);
    Outcome {
        report,
        sweep: Some(sweep),
        converged: true,
    }
}

fn stats_be_mb(common: &Common, n: Option<usize>, m: Option<usize>, cap: u128) -> Result<Outcome> {
    let (n, m, counts, bytes) = match (n, m) {
        (Some(n), Some(m)) => (n, m, None, format!("n={n},m={m}").into_bytes()),
        _ => {
            let (d, bytes) = input(common, DatasetKind::OccupationCounts)?;
            let Payload::OccupationCounts(o) = d.payload else {
                unreachable!("loaded as occupation counts")
            };
            (o.n, o.m, o.counts, bytes)
        }
    };
    let dist = identical_concepts_distributions(n, m, counts.as_deref(), cap)?;
    let mut report = Report::new("stats-be-mb", &bytes, common.seed);
    report.insert("n", n as u64);
    report.insert("m", m as u64);
    report.insert("configurations", json!(dist.configurations));
    report.insert("maxwell_boltzmann", json!(dist.maxwell_boltzmann));
    report.insert("bose_einstein", json!(dist.bose_einstein));
    if let Some((mb, be)) = dist.log_likelihood {
        report.insert("log_likelihood", json!({"maxwell_boltzmann": mb, "bose_einstein": be}));
    }
    let mut sweep = Sweep::new(&["configuration", "maxwell_boltzmann", "bose_einstein", "count"]);
    for (k, c) in dist.configurations.iter().enumerate() {
        let label: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        sweep.push(vec![
            label.join(" "),
            dist.maxwell_boltzmann[k].to_string(),
            dist.bose_einstein[k].to_string(),
            counts.as_ref().map(|v| v[k].to_string()).unwrap_or_default(),
        ]);
    }
    Ok(Outcome {
        report,
        sweep: Some(sweep),
        converged: true,
    })
}
