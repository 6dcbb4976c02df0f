//! `lrlab`: command-line front end for the local-realistic model laboratory.
//!
//! Exit codes: 0 when every gating row matches, 1 when a gating row
//! mismatches (the artifact is still written), 2 for usage, configuration
//! and I/O errors (no artifact).

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lrlab_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(name = "lrlab", version, about = "Local-realistic correlation models on S³ and S⁷ against quantum mechanics")]
struct Cli {
    /// JSON config file. Flags take precedence over its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// JSON file with `unit`, `directions`, `theta`, `alpha`, `delta`.
    #[arg(long, global = true)]
    angles_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Singlet,
    Chsh,
    Hardy,
    Ghz3,
    Ghz4,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebraic identities of both kernels on random inputs.
    Identities(RunConfig),
    /// Quantum expectation values for one state and setting.
    Qm(RunConfig),
    /// Evaluate one model and compare it with quantum mechanics.
    Model {
        #[arg(value_enum)]
        kind: ModelKind,
        #[command(flatten)]
        params: RunConfig,
    },
    /// Solve the Hardy angle system over a θ grid.
    SolveHardy(RunConfig),
    /// CHSH sweep with a = 0, b = φ, a′ = 2φ, b′ = −φ.
    ScanChsh(RunConfig),
    /// Seeded hidden-variable ensemble.
    Mc(RunConfig),
    /// Model vs. quantum comparison on random settings.
    Compare(RunConfig),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Identities(_) => "identities",
            Command::Qm(_) => "qm",
            Command::Model { .. } => "model",
            Command::SolveHardy(_) => "solve-hardy",
            Command::ScanChsh(_) => "scan-chsh",
            Command::Mc(_) => "mc",
            Command::Compare(_) => "compare",
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let name = cli.command.name();
    let (kind, flags) = match cli.command {
        Command::Model { kind, params } => (Some(kind), params),
        Command::Identities(p)
        | Command::Qm(p)
        | Command::SolveHardy(p)
        | Command::ScanChsh(p)
        | Command::Mc(p)
        | Command::Compare(p) => (None, p),
    };
    let mut cfg = flags;
    if let Some(path) = &cli.angles_file {
        cfg = cfg.over(RunConfig::load(path)?);
    }
    if let Some(path) = &cli.config {
        let file = RunConfig::load(path)?;
        if let Some(c) = &file.command
            && c != name
        {
            return Err(CliError::Usage(format!("config is for {c:?}, not {name:?}")));
        }
        cfg = cfg.over(file);
    }
    cfg.check_unit()?;
    let artifact = commands::dispatch(name, kind, &cfg)?;
    output::emit(&artifact, &cfg)?;
    Ok(artifact.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lrlab: {e}");
            ExitCode::from(2)
        }
    }
}
