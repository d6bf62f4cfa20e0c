//! `seqcs` command-line front end.
//!
//! Exit codes: 0 on success or a passing check, 1 when the answer is a valid
//! negative (no witness, failed verification, inequality violated), 2 on
//! input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use seqcs::analysis::Family;

#[derive(Debug, Parser)]
#[command(name = "seqcs", version, about = "Sequential Cauchy-Schwarz complexity of linear-form systems over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct GlobalArgs {
    /// Format of the report written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    output: OutputFormat,
    /// Write the command's main artifact (certificate, chain, system or
    /// report) as JSON to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Field, shape, associated set, per-index complexities and the tensor
    /// criterion of a system file.
    Analyze(commands::AnalyzeArgs),
    /// Search for a sequential witness at one form.
    Witness(commands::WitnessArgs),
    /// Check a witness certificate against a system.
    Verify(commands::VerifyArgs),
    /// Build the reduction chain of a witness.
    Reduce(commands::ReduceArgs),
    /// Test the generalized von Neumann inequality on random functions.
    Gvn(commands::GvnArgs),
    /// Build Φ_{k,M}, its witness sequence, and the lower-bound family.
    Phikm(commands::PhikmArgs),
    /// Minimum affine or hyperplane cover of a point set avoiding points.
    Cover(commands::CoverArgs),
    /// Gowers norm of a function table.
    Gowers(commands::GowersArgs),
}

/// Result of one command before formatting.
pub struct Outcome {
    /// Structured report; the run configuration is attached by `main`.
    pub report: Value,
    /// Human-readable rendering of the report.
    pub table: String,
    /// What `--out` writes; the report when `None`.
    pub artifact: Option<Value>,
    /// Extra files to write next to the artifact.
    pub sidecars: Vec<(PathBuf, Value)>,
    pub pass: bool,
}

pub fn parse_family(s: &str) -> Result<Family, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|_| {
        format!("unknown family {s:?}; expected phases, disk, signs, sparse, random, character or quadratic-phase")
    })
}

fn write_json(path: &PathBuf, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Witness(a) => commands::witness(a),
        Command::Verify(a) => commands::verify(a),
        Command::Reduce(a) => commands::reduce(a),
        Command::Gvn(a) => commands::gvn(a),
        Command::Phikm(a) => commands::phikm(a),
        Command::Cover(a) => commands::cover(a),
        Command::Gowers(a) => commands::gowers(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let config = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "args": serde_json::to_value(&cli.command).expect("arguments serialize"),
        "global": serde_json::to_value(&cli.global).expect("arguments serialize"),
    });
    let mut report = outcome.report;
    if let Value::Object(map) = &mut report {
        map.insert("config".into(), config);
        map.insert("pass".into(), Value::Bool(outcome.pass));
    }
    if let Some(path) = &cli.global.out {
        let artifact = outcome.artifact.as_ref().unwrap_or(&report);
        if let Err(msg) = write_json(path, artifact) {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    for (path, value) in &outcome.sidecars {
        if let Err(msg) = write_json(path, value) {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    match cli.global.output {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("JSON values serialize"))
        }
        OutputFormat::Table => print!("{}", outcome.table),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
