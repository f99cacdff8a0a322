//! Command-line front end: function tables, Cauchy solving and the
//! validation suites.
//!
//! Every command is driven by a [`RunConfig`]: a command name, a flat
//! parameter map, an optional output path and a table format. The binary
//! builds one from an optional JSON file and command-line flags (flags win)
//! and hands it to [`run`].

use std::path::PathBuf;

use serde::Deserialize;

pub mod commands;
pub mod grid;
pub mod params;
pub mod table;
pub mod validate;

pub use params::Params;
pub use table::{Cell, Format, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] wrightsol_core::Error),
    #[error(transparent)]
    Oracle(#[from] wrightsol_oracle::OracleError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for anything that stops a run before it produces numbers.
    pub fn exit_code(&self) -> i32 {
        1
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Wright,
    Genwright,
    Fundsol,
    Selfsim,
    Solve,
    Validate,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<CommandKind>,
    #[serde(default)]
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ConfigFile {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub parameters: Params,
    pub output: Option<PathBuf>,
    pub format: Format,
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    /// Human-readable report printed to stdout (validation only).
    pub report: Option<String>,
    /// False when a validation check fell outside its tolerance.
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

/// Runs one command. Parameters are checked against the target module
/// before any evaluation.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let p = &cfg.parameters;
    let table = |t| Outcome {
        table: t,
        report: None,
        passed: true,
    };
    match cfg.command {
        CommandKind::Wright => commands::wright(p).map(table),
        CommandKind::Genwright => commands::genwright(p).map(table),
        CommandKind::Fundsol => commands::fundsol(p).map(table),
        CommandKind::Selfsim => commands::selfsim(p).map(table),
        CommandKind::Solve => commands::solve(p).map(table),
        CommandKind::Validate => {
            p.allow(&["suite"])?;
            let suite = p.text_or("suite", "all")?;
            let checks = validate::run_named(&suite)?;
            Ok(Outcome {
                table: validate::table(&checks),
                report: Some(validate::report(&checks)),
                passed: checks.iter().all(|c| c.pass),
            })
        }
    }
}

/// Writes the outcome: the table to `cfg.output` (or stdout when there is
/// no report), the report to stdout.
pub fn emit(cfg: &RunConfig, out: &Outcome, stdout: &mut dyn std::io::Write) -> Result<()> {
    if let Some(path) = &cfg.output {
        out.table.write_path(path, cfg.format)?;
    } else if out.report.is_none() {
        out.table.write(stdout, cfg.format)?;
    }
    if let Some(r) = &out.report {
        stdout.write_all(r.as_bytes())?;
    }
    Ok(())
}
