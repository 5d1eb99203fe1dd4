//! Front end for `slabchrom`: one subcommand per invocation, a canonical
//! JSON report, and an exit code that agrees with the report's verdict.

mod args;
mod commands;

use std::ffi::OsString;
use std::fs;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use slabchrom::distset::{parse_distance_set, DistError};
use slabchrom::exact::Radicand;
use slabchrom::lattice::LatticeError;
use slabchrom::slab::SlabError;
use slabchrom::zgraph::ZGraphError;

pub use args::{Cli, Command, PointSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const VERSION: &str = concat!("slabchrom ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Input(String),
    Budget(String),
    Failed(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Budget(_) => "budget",
            CliError::Failed(_) => "failed",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Budget(m) | CliError::Failed(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Failed(_) => EXIT_NEGATIVE,
        }
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::WindowTooLarge { .. } | LatticeError::CliqueBudget(_) => CliError::Budget(e.to_string()),
            LatticeError::EmptyWindow | LatticeError::RankOneWindow | LatticeError::InvalidT(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ZGraphError> for CliError {
    fn from(e: ZGraphError) -> Self {
        match e {
            ZGraphError::StateBudget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SlabError> for CliError {
    fn from(e: SlabError) -> Self {
        match e {
            SlabError::Lattice(e) => e.into(),
            SlabError::ZGraph(e) => e.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// What a subcommand produced before it is wrapped into a report.
pub(crate) struct CommandOutput {
    pub params: Value,
    pub result: Value,
    pub certificates: Vec<Value>,
    /// `false` for a negative verdict (exit code 1).
    pub positive: bool,
    pub csv: Option<String>,
}

/// Result of one invocation: the report, the exit code, and the text meant
/// for standard output.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
    pub stdout: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome { report: Value::Null, exit_code: EXIT_OK, stdout: e.to_string() };
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string());
            let report = error_report(Value::Null, Value::Null, &err);
            return finish(report, err.exit_code(), None, None, None);
        }
    };
    let command = Value::from(cli.command.name());
    let input = json!({ "distances": cli.distances.clone(), "radicand": cli.radicand });

    let parsed = (|| {
        let m = Radicand::new(cli.radicand).map_err(|e| CliError::Usage(e.to_string()))?;
        let text = cli.distances.as_deref().ok_or_else(|| CliError::Usage("missing -d/--distances".into()))?;
        Ok::<_, CliError>(parse_distance_set(text, m)?)
    })();
    let ds = match parsed {
        Ok(ds) => ds,
        Err(err) => {
            let report = error_report(command, input, &err);
            return finish(report, err.exit_code(), cli.json.as_deref(), None, None);
        }
    };
    let input = json!({ "distances": ds.to_string(), "radicand": ds.radicand().get() });

    match commands::execute(&cli, &ds) {
        Ok(out) => {
            let code = if out.positive { EXIT_OK } else { EXIT_NEGATIVE };
            let verdict = if out.positive { "positive" } else { "negative" };
            let rep = json!({
                "command": command,
                "input": input,
                "params": out.params,
                "result": out.result,
                "certificates": out.certificates,
                "version": VERSION,
                "verdict": verdict,
                "exit_code": code,
            });
            let to_stdout_csv = matches!(cli.command, Command::EmitPoints { .. }) && cli.points.is_none();
            finish(rep, code, cli.json.as_deref(), cli.points.as_deref(), out.csv.map(|c| (c, to_stdout_csv)))
        }
        Err(err) => {
            let rep = error_report(command, input, &err);
            finish(rep, err.exit_code(), cli.json.as_deref(), None, None)
        }
    }
}

fn error_report(command: Value, input: Value, err: &CliError) -> Value {
    json!({
        "command": command,
        "input": input,
        "params": {},
        "result": Value::Null,
        "certificates": [],
        "version": VERSION,
        "verdict": "error",
        "exit_code": err.exit_code(),
        "error": { "kind": err.kind(), "message": err.message() },
    })
}

fn finish(
    mut report: Value,
    mut code: i32,
    json_path: Option<&std::path::Path>,
    points_path: Option<&std::path::Path>,
    csv: Option<(String, bool)>,
) -> Outcome {
    let mut stdout = String::new();
    if let Some((csv, to_stdout)) = csv {
        if to_stdout {
            stdout.push_str(&csv);
        } else if let Some(path) = points_path {
            if let Err(e) = fs::write(path, csv) {
                let err = CliError::Usage(format!("cannot write {}: {e}", path.display()));
                code = err.exit_code();
                report["verdict"] = "error".into();
                report["exit_code"] = code.into();
                report["error"] = json!({ "kind": err.kind(), "message": err.message() });
            }
        }
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match json_path {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                code = EXIT_USAGE;
                stdout.push_str(&format!("cannot write {}: {e}\n", path.display()));
            } else if stdout.is_empty() {
                stdout = summary(&report);
            }
        }
        None if stdout.is_empty() => stdout = text,
        None => {}
    }
    Outcome { report, exit_code: code, stdout }
}

fn summary(report: &Value) -> String {
    format!(
        "{} {}: {}\n",
        report["command"].as_str().unwrap_or("?"),
        report["input"]["distances"].as_str().unwrap_or(""),
        report["verdict"].as_str().unwrap_or("?")
    )
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
