//! Command-line frontend for the disc-spinor library.
//!
//! Subcommands:
//! - `spectrum`: mass eigenvalues over a parameter sweep
//! - `mode`: radial profiles and tower coefficients of a single eigenstate
//! - `figure`: profile slices over an (x, epsilon) grid for plotting
//! - `verify`: the full self-check battery, optionally with an injected fault
//! - `clifford`: gamma-matrix identity checks in even dimension d <= 10
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.
//! Every run is deterministic: identical arguments produce byte-identical
//! output, and nothing is written until the whole computation has succeeded.

mod clifford_cmd;
mod figure_cmd;
mod mode_cmd;
mod output;
mod parse;
mod spectrum_cmd;
mod verify_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Output format for every subcommand.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// RFC 4180 CSV with a `#`-prefixed self-describing header.
    Csv,
    /// A single JSON document with `meta`, `columns`, and `rows`.
    Json,
}

/// Which of the two radial profiles a figure plots.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ProfileChoice {
    A,
    B,
}

/// Identifier of a supported figure: profile family times (l0, n).
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "a-2-0")]
    A20,
    #[value(name = "b-2-0")]
    B20,
    #[value(name = "a-4-0")]
    A40,
    #[value(name = "b-4-0")]
    B40,
    #[value(name = "a-2-1")]
    A21,
    #[value(name = "b-2-1")]
    B21,
}

impl FigureId {
    pub fn profile(self) -> ProfileChoice {
        match self {
            FigureId::A20 | FigureId::A40 | FigureId::A21 => ProfileChoice::A,
            FigureId::B20 | FigureId::B40 | FigureId::B21 => ProfileChoice::B,
        }
    }

    pub fn l0(self) -> u32 {
        match self {
            FigureId::A20 | FigureId::B20 | FigureId::A21 | FigureId::B21 => 2,
            FigureId::A40 | FigureId::B40 => 4,
        }
    }

    pub fn n(self) -> u32 {
        match self {
            FigureId::A21 | FigureId::B21 => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FigureId::A20 => "a-2-0",
            FigureId::B20 => "b-2-0",
            FigureId::A40 => "a-4-0",
            FigureId::B40 => "b-4-0",
            FigureId::A21 => "a-2-1",
            FigureId::B21 => "b-2-1",
        }
    }
}

/// Errors that map to the documented nonzero exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid arguments or an unusable output target. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A verification or computation failure on valid input. Exit code 1.
    #[error("{0}")]
    Failure(String),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "disc-spinor",
    version,
    about = "Mass spectrum and spinor eigenstates on a disc curved into an almost-sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate mass eigenvalues over sweeps in epsilon, n, and l0.
    Spectrum(SpectrumArgs),
    /// Sample the normalized radial profiles of one eigenstate.
    Mode(ModeArgs),
    /// Tabulate a profile over an (x, epsilon) grid for a named figure.
    Figure(FigureArgs),
    /// Run the self-check battery and report each check's residual.
    Verify(VerifyArgs),
    /// Check the gamma-matrix algebra in even dimension d.
    Clifford(CliffordArgs),
}

#[derive(clap::Args)]
pub struct SpectrumArgs {
    /// Spin-connection parameter, in [0, 0.5).
    #[arg(long, conflicts_with = "epsilon_range")]
    epsilon: Option<f64>,
    /// Inclusive sweep "start:end:steps" with steps >= 2.
    #[arg(long, value_name = "A:B:STEPS")]
    epsilon_range: Option<String>,
    /// Angular index; repeat the flag for several values.
    #[arg(long, action = clap::ArgAction::Append)]
    n: Vec<u32>,
    /// Top tower degree; selects a single eigenvalue per (epsilon, n).
    #[arg(long, conflicts_with = "l0_range")]
    l0: Option<u32>,
    /// Inclusive degree sweep "start:end".
    #[arg(long, value_name = "A:B")]
    l0_range: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct ModeArgs {
    /// Spin-connection parameter, in [0, 0.5).
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Angular index of the state.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Top tower degree of the state; must satisfy l0 >= n.
    #[arg(long)]
    l0: u32,
    /// Number of sample points in x.
    #[arg(long, default_value = "101", value_name = "NX")]
    grid: String,
    /// Distance from the domain endpoints x = -1 and x = 1.
    #[arg(long, default_value_t = 1e-10)]
    delta: f64,
    /// Base Gauss-Jacobi order for the normalization integral.
    #[arg(long, default_value_t = 80)]
    quad_order: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct FigureArgs {
    /// Which figure to tabulate.
    #[arg(long, value_enum)]
    figure_id: FigureId,
    /// Grid "NX" or "NXxNE" (x samples by epsilon samples).
    #[arg(long, default_value = "400x50", value_name = "NX[xNE]")]
    grid: String,
    /// Distance from the domain endpoints x = -1 and x = 1.
    #[arg(long, default_value_t = 1e-10)]
    delta: f64,
    /// Tabulate only the three reference slices epsilon in {0, 0.25, 0.49}.
    #[arg(long)]
    slices: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    /// Check a single epsilon instead of the default sweep.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Perturb one tower coefficient and confirm the residuals catch it.
    #[arg(long)]
    inject_fault: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct CliffordArgs {
    /// Spacetime dimension; even, between 2 and 10.
    #[arg(long, default_value_t = 6)]
    d: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => spectrum_cmd::run(&args),
        Command::Mode(args) => mode_cmd::run(&args),
        Command::Figure(args) => figure_cmd::run(&args),
        Command::Verify(args) => verify_cmd::run(&args),
        Command::Clifford(args) => clifford_cmd::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("disc-spinor: {err}");
            match err {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Failure(_) => ExitCode::from(1),
            }
        }
    }
}
