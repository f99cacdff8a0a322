use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wrightsol::{emit, run, CliError, CommandKind, ConfigFile, Format, Params, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "wrightsol",
    version,
    about = "Wright-function kernels and time-fractional Cauchy problems"
)]
struct Cli {
    /// JSON run configuration; flags given on the command line override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the table here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wright function phi(-sigma, beta, z).
    Wright(WrightArgs),
    /// Generalized Wright function W_{(mu,a),(nu,b)}(z).
    Genwright(GenWrightArgs),
    /// Fundamental solution D^gamma d^s_x Gamma_b(dx, dy).
    Fundsol(FundsolArgs),
    /// Self-similar solution u_j(x, y).
    Selfsim(SelfsimArgs),
    /// Cauchy problem on an x-y grid.
    Solve(SolveArgs),
    /// Validation suites: fresnel, lemma1, lemma2, lemma3, eq19, manufactured,
    /// residual, all (and the extra suites wright, selfsim).
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Serialize)]
struct WrightArgs {
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    /// Grid of Re z (`a:b:count` or comma list).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    z_re: Option<String>,
    /// Grid of Im z (default 0).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    z_im: Option<String>,
    /// auto, series or contour.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct GenWrightArgs {
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    z_re: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    z_im: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct FundsolArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    /// Riemann-Liouville order gamma applied in time.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    time_shift: Option<f64>,
    /// Spatial derivative order s.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    space_order: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    dx: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    dy: Option<String>,
    /// Admit alpha = 2 (closed-form checks).
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    validation: bool,
}

#[derive(Args, Debug, Serialize)]
struct SelfsimArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    /// +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct SolveArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    /// Initial value, e.g. `gaussian:1,0,1` or `zero`.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<String>,
    /// Initial velocity-type datum.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<String>,
    /// Source, optionally `g*y^m`.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    xgrid: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    ygrid: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    max_panels: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
struct ValidateArgs {
    #[serde(skip_serializing_if = "Option::is_none")]
    suite: Option<String>,
}

fn flags<T: Serialize>(kind: CommandKind, args: &T) -> (CommandKind, Params) {
    match serde_json::to_value(args).expect("flag serialization") {
        serde_json::Value::Object(m) => (kind, Params::new(m)),
        _ => unreachable!("argument structs serialize to objects"),
    }
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let from_flags = cli.command.map(|c| match c {
        Command::Wright(a) => flags(CommandKind::Wright, &a),
        Command::Genwright(a) => flags(CommandKind::Genwright, &a),
        Command::Fundsol(a) => flags(CommandKind::Fundsol, &a),
        Command::Selfsim(a) => flags(CommandKind::Selfsim, &a),
        Command::Solve(a) => flags(CommandKind::Solve, &a),
        Command::Validate(a) => flags(CommandKind::Validate, &a),
    });
    let mut parameters = Params::new(file.parameters);
    let command = match (from_flags, file.command) {
        (Some((kind, _)), Some(cfg)) if kind != cfg => {
            return Err(CliError::Usage(format!(
                "subcommand {kind:?} conflicts with config command {cfg:?}"
            )))
        }
        (Some((kind, p)), _) => {
            parameters.merge(p);
            kind
        }
        (None, Some(cfg)) => cfg,
        (None, None) => return Err(CliError::Usage("no command given (see --help)".into())),
    };
    Ok(RunConfig {
        command,
        parameters,
        output: cli.output.or(file.output),
        format: cli.format.or(file.format).unwrap_or_default(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = build(cli).and_then(|cfg| {
        let out = run(&cfg)?;
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        emit(&cfg, &out, &mut lock)?;
        lock.flush()?;
        Ok(out.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
