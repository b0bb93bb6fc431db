//! `superfock`: batch front end for validating and implementing Bogoliubov transformations.
//!
//! Every command prints a JSON report on stdout; warnings also go to stderr.
//! Exit codes: 0 ok, 1 validation failure, 2 I/O or parse error, 3 numerical ambiguity.

mod commands;
mod json;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] superfock::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use superfock::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Library(E::Dimension(_) | E::TooLarge { .. }) => 2,
            CliError::Library(E::AmbiguousRank { .. } | E::IllConditioned(_)) => 3,
            CliError::Library(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "superfock",
    version,
    about = "Fermionic Bogoliubov transformations on finite mode spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tolerance applied to every reported residual.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Print the index-set reading used by the kernel duality map.
    #[arg(long, global = true)]
    strict_notation: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orthogonality residuals, kernel dimensions and component of a transform.
    Check {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Build the implementer T(R) and check it.
    Implement {
        #[arg(short, long)]
        input: PathBuf,
        /// Where to write the implementer matrix; embedded in the report when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compose two transforms (the first given acts last) and report the cocycle.
    Compose {
        #[arg(short, long, required = true)]
        input: Vec<PathBuf>,
    },
    /// Image of the vacuum and coset coordinate of a transform.
    Vacuum {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Run the invariant battery on random data.
    Selftest {
        #[arg(long, default_value_t = 3)]
        modes: usize,
        #[arg(long, default_value_t = 2)]
        generators: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const STRICT_NOTE: &str =
    "kernel duality map: the sign (-1)^tau(K, N) is evaluated with N read as the full \
                           index set M = {1, ..., n} of the kernel basis";

fn run(cli: &Cli) -> Report {
    let Format::Json = cli.format;
    let (name, inputs) = match &cli.command {
        Command::Check { input } => ("check", vec![input.clone()]),
        Command::Implement { input, .. } => ("implement", vec![input.clone()]),
        Command::Compose { input } => ("compose", input.clone()),
        Command::Vacuum { input } => ("vacuum", vec![input.clone()]),
        Command::Selftest { .. } => ("selftest", vec![]),
    };
    let shown = inputs.iter().map(|p| p.display().to_string()).collect();
    let mut report = Report::new(name, shown, cli.tol);
    if cli.strict_notation && name != "check" {
        eprintln!("note: {STRICT_NOTE}");
        report.notes.push(STRICT_NOTE.to_string());
    }
    let result = if !(cli.tol.is_finite() && cli.tol > 0.0) {
        Err(CliError::Input(format!(
            "tolerance must be positive, got {}",
            cli.tol
        )))
    } else {
        match &cli.command {
            Command::Check { input } => commands::check(input, &mut report),
            Command::Implement { input, out } => {
                commands::implement(input, out.as_deref(), &mut report)
            }
            Command::Compose { input } => commands::compose(input, &mut report),
            Command::Vacuum { input } => commands::vacuum(input, &mut report),
            Command::Selftest {
                modes,
                generators,
                seed,
            } => selftest::run(*modes, *generators, *seed, &mut report),
        }
    };
    match result {
        Ok(()) => report.judge(),
        Err(e) => {
            eprintln!("error: {e}");
            report.fail(e.exit_code(), e.to_string());
        }
    }
    report
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    println!("{}", report.render());
    ExitCode::from(report.exit_code)
}
