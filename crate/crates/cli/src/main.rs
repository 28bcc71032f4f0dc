//! Command-line front end for analysing win-lose coordination games:
//! generation from algebraic expressions, per-choice analysis,
//! principle solving with reduction traces, full classification,
//! corpus verification and Graphviz export.

mod doc;
mod dot;
mod error;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use wlc_core::algebra::parse_expression;
use wlc_core::classify::{classify_with, ReportFlag, SolvabilityReport};
use wlc_core::limits::SIZE_LIMIT_ENV;
use wlc_core::principles::{cir_reduce, parse_principle, permissible_all, Principle};
use wlc_core::symmetry::{all_choice_equivalences_with, structural_classes_with};
use wlc_core::verify::{run_corpus_checks, witness_checks};
use wlc_core::{ChoiceId, Game, Limits};

use crate::doc::{load_game, save_game, GameDocument, Meta};
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "wlc",
    about = "Analyse pure win-lose coordination games",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a game from an algebraic expression, e.g. "Z2 + bar(1x1)".
    Gen {
        expr: String,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Per-choice statuses, optimal sets and symmetry partitions.
    Analyze { file: PathBuf },
    /// Evaluate one principle on a game.
    Solve {
        file: PathBuf,
        /// Principle syntax: FIR|NL|SW|BIR|IOC|BIR+|IRC|ECS|EPS|ES|PR|BCR|COC|CRC|cir(P)|P&Q
        #[arg(short, long)]
        principle: String,
        /// Print the collective-iterated-reasoning stages.
        #[arg(long)]
        trace: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Full solvability report across all named principles.
    Classify {
        file: PathBuf,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Run the corpus-level verification suite.
    VerifyHierarchy {
        #[arg(long, default_value_t = 2)]
        players: usize,
        #[arg(long, default_value_t = 3)]
        max_choices: usize,
    },
    /// Export the game graph in Graphviz DOT format.
    ExportDot {
        file: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn limits_from_env() -> Limits {
    match std::env::var(SIZE_LIMIT_ENV) {
        Ok(value) => match value.parse::<u128>() {
            Ok(budget) => Limits::with_budget(budget),
            Err(_) => Limits::default(),
        },
        Err(_) => Limits::default(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep exit code 1 for every invalid invocation; help and
            // version still exit 0
            if e.use_stderr() {
                let _ = write!(std::io::stderr(), "{e}");
                return ExitCode::from(1);
            }
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
    };
    let limits = limits_from_env();
    match run(cli.command, &limits) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let payload = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{payload}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command, limits: &Limits) -> Result<u8, CliError> {
    match command {
        Command::Gen { expr, output } => gen(&expr, output),
        Command::Analyze { file } => analyze(&file, limits),
        Command::Solve {
            file,
            principle,
            trace,
            json,
        } => solve(&file, &principle, trace, json, limits),
        Command::Classify { file, json } => classify_cmd(&file, json, limits),
        Command::VerifyHierarchy {
            players,
            max_choices,
        } => verify_hierarchy(players, max_choices, limits),
        Command::ExportDot { file, output } => export_dot_cmd(&file, output),
    }
}

fn emit(output: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn gen(expr: &str, output: Option<PathBuf>) -> Result<u8, CliError> {
    // parse first so errors carry positions, then evaluate
    let tree = parse_expression(expr)?;
    let game = wlc_core::algebra::evaluate(&tree)?;
    let meta = Meta {
        label: None,
        expr: Some(expr.to_string()),
    };
    match output {
        Some(path) => save_game(&game, Some(meta), &path)?,
        None => print!("{}", GameDocument::from_game(&game, Some(meta)).to_json()),
    }
    Ok(0)
}

fn set_names(g: &Game, set: &std::collections::BTreeSet<ChoiceId>) -> String {
    let names: Vec<&str> = set.iter().map(|&c| g.name(c)).collect();
    format!("{{{}}}", names.join(", "))
}

fn cells_to_string(cells: &[Vec<String>]) -> String {
    cells
        .iter()
        .map(|cell| format!("{{{}}}", cell.join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn analyze(file: &Path, limits: &Limits) -> Result<u8, CliError> {
    let (game, _) = load_game(file)?;
    println!(
        "game: {} players, {} choices, {} winning profiles",
        game.players(),
        game.choice_count(),
        game.win().len()
    );
    let equivalences = all_choice_equivalences_with(&game, limits)?;
    for (p, equivalence) in equivalences.iter().enumerate() {
        println!("player {}:", p + 1);
        for &c in game.choices(p) {
            let status = match game.choice_status(c) {
                wlc_core::ChoiceStatus::SurelyWinning => "surely winning",
                wlc_core::ChoiceStatus::SurelyLosing => "surely losing",
                wlc_core::ChoiceStatus::Contingent => "contingent",
            };
            println!(
                "  {}: {status}, extension {}/{}",
                game.name(c),
                game.extension_size(c),
                game.others_product_size(p)
            );
        }
        let optimal = game.optimal_choices(p)?;
        println!("  optimal: {}", set_names(&game, &optimal));
        println!(
            "  choice equivalence: {}",
            cells_to_string(&equivalence.cells_by_name(&game))
        );
    }
    let classes = structural_classes_with(&game, limits)?;
    println!(
        "structural classes: {}",
        cells_to_string(&classes.cells_by_name(&game))
    );
    Ok(0)
}

fn sets_json(g: &Game, sets: &[std::collections::BTreeSet<ChoiceId>]) -> serde_json::Value {
    json!(sets
        .iter()
        .map(|s| s.iter().map(|&c| g.name(c).to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn solve(
    file: &Path,
    principle_text: &str,
    trace: bool,
    json_output: bool,
    limits: &Limits,
) -> Result<u8, CliError> {
    let (game, _) = load_game(file)?;
    let principle = parse_principle(principle_text)?;
    let result = permissible_all(&principle, &game, limits)?;
    let axes: Vec<Vec<ChoiceId>> = result
        .sets
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let solved = !axes.iter().any(|a| a.is_empty())
        && wlc_core::game::product_tuples(&axes).all(|t| game.is_winning(&t));

    let reduction = match principle.normalized() {
        Principle::Cir(inner) => Some(cir_reduce(&inner, &game, limits)?),
        _ => None,
    };

    if json_output {
        let mut payload = json!({
            "principle": principle.to_string(),
            "solved": solved,
            "permissible": sets_json(&game, &result.sets),
            "incompatible": result.incompatible,
        });
        if let Some(trace_data) = &reduction {
            payload["iterations"] = json!(trace_data.shrinking_steps());
            payload["trace"] = json!(trace_data
                .stages()
                .iter()
                .map(|stage| sets_json(&stage.game, &stage.permissible))
                .collect::<Vec<_>>());
        }
        println!("{payload}");
        return Ok(0);
    }

    println!("principle: {principle}");
    if let Some(trace_data) = &reduction {
        if trace {
            for (k, stage) in trace_data.stages().iter().enumerate() {
                if k == trace_data.stages().len() - 1 {
                    break;
                }
                let sets: Vec<String> = stage
                    .permissible
                    .iter()
                    .enumerate()
                    .map(|(p, s)| format!("player {}: {}", p + 1, set_names(&stage.game, s)))
                    .collect();
                println!("iteration {}: {}", k + 1, sets.join("; "));
            }
        }
        println!(
            "fixed point after {} shrinking iterations",
            trace_data.shrinking_steps()
        );
    }
    for (p, s) in result.sets.iter().enumerate() {
        println!("player {}: {}", p + 1, set_names(&game, s));
    }
    if result.incompatible {
        println!("note: an intersection emptied and fell back to the full choice set");
    }
    println!("solved: {solved}");
    Ok(0)
}

fn report_json(game: &Game, report: &SolvabilityReport) -> serde_json::Value {
    let mut principles = serde_json::Map::new();
    for v in &report.verdicts {
        let mut entry = json!({
            "solves": v.solves,
            "permissible": sets_json(game, &v.permissible),
        });
        if let Some(trace) = &v.trace {
            entry["iterations"] = json!(trace.shrinking_steps());
        }
        if v.incompatible {
            entry["incompatible"] = json!(true);
        }
        principles.insert(v.principle.label().to_string(), entry);
    }
    let flags: Vec<String> = report
        .flags
        .iter()
        .map(|f| match f {
            ReportFlag::Unwinnable => "unwinnable".to_string(),
            ReportFlag::IncompatiblePrinciples(label) => format!("incompatible:{label}"),
        })
        .collect();
    json!({
        "players": game.players(),
        "structurally_indeterminate": report.structurally_indeterminate,
        "unwinnable": report.unwinnable,
        "canonical_choice_sets": report
            .canonical_choice_sets
            .as_ref()
            .map(|sets| sets_json(game, sets)),
        "flags": flags,
        "principles": serde_json::Value::Object(principles),
    })
}

fn classify_cmd(file: &Path, json_output: bool, limits: &Limits) -> Result<u8, CliError> {
    let (game, _) = load_game(file)?;
    let report = classify_with(&game, limits)?;
    if json_output {
        println!("{}", report_json(&game, &report));
        return Ok(0);
    }
    println!(
        "game: {} players, {} choices, {} winning profiles",
        game.players(),
        game.choice_count(),
        game.win().len()
    );
    println!(
        "structurally indeterminate: {}",
        report.structurally_indeterminate
    );
    if report.unwinnable {
        println!("unwinnable: true");
    }
    for v in &report.verdicts {
        let sets: Vec<String> = v.permissible.iter().map(|s| set_names(&game, s)).collect();
        let iterations = v
            .trace
            .as_ref()
            .map(|t| format!(", {} iterations", t.shrinking_steps()))
            .unwrap_or_default();
        println!(
            "{:<5} solves={}{} permissible: {}",
            v.principle.label(),
            v.solves,
            iterations,
            sets.join(" ")
        );
    }
    if let Some(sets) = &report.canonical_choice_sets {
        let rendered: Vec<String> = sets.iter().map(|s| set_names(&game, s)).collect();
        println!("canonical protocol: {}", rendered.join(" "));
    }
    Ok(0)
}

fn verify_hierarchy(players: usize, max_choices: usize, limits: &Limits) -> Result<u8, CliError> {
    let mut results = witness_checks(limits)?;
    results.extend(run_corpus_checks(players, max_choices, limits)?);
    let mut failures = 0;
    for r in &results {
        println!(
            "[{}] {} — {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        if !r.pass {
            failures += 1;
        }
    }
    if failures > 0 {
        println!("{failures} checks failed");
        return Ok(1);
    }
    println!("all {} checks passed", results.len());
    Ok(0)
}

fn export_dot_cmd(file: &Path, output: Option<PathBuf>) -> Result<u8, CliError> {
    let (game, _) = load_game(file)?;
    emit(output, &dot::export_dot(&game))?;
    Ok(0)
}
