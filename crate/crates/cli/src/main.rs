//! `nsot`: threshold curves, security parameters, protocol simulation and
//! verification suites for oblivious transfer with noisy quantum storage.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition
//! error, 3 infeasible parameters.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "nsot",
    version,
    about = "Oblivious transfer in the noisy-quantum-storage model"
)]
struct Cli {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format (uncertainty defaults to csv, everything else to json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Uncertainty bound t(r): closed form against direct minimization
    Uncertainty(UncertaintyArgs),
    /// Extractable output length for the ideal or the robust protocol
    Bounds(BoundsArgs),
    /// Honest and dishonest runs of the protocol
    Simulate(SimulateArgs),
    /// Property suites: entropy, appendixB, pa or all
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct UncertaintyArgs {
    #[arg(long, default_value_t = 0.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ideal,
    Robust,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("bound").required(true).args(["r", "t"])))]
pub struct BoundsArgs {
    #[arg(long, value_enum, default_value_t = Mode::Ideal)]
    pub mode: Mode,
    /// Number of qubits
    #[arg(long)]
    pub n: u64,
    /// Security error
    #[arg(long)]
    pub eps: f64,
    /// Storage noise parameter; t is taken from the closed-form bound
    #[arg(long)]
    pub r: Option<f64>,
    /// Uncertainty bound in bits, instead of --r
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub p_error: f64,
    #[arg(long, default_value_t = 0.0)]
    pub p_erase: f64,
    /// Extra syndrome bits over the asymptotic length, both strings together
    #[arg(long, default_value_t = 0.0)]
    pub syndrome_overhead: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    Store,
    Computational,
    Hadamard,
    Breidbart,
    Partial,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub ell: usize,
    /// Width of Alice's abort window
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.0)]
    pub p_error: f64,
    #[arg(long, default_value_t = 0.0)]
    pub p_erase: f64,
    /// Storage noise parameter of the dishonest receiver
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    #[arg(long, value_enum, default_value_t = StrategyName::Store)]
    pub strategy: StrategyName,
    /// Partial measurement: α in [0, 1/√2]
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub x_hat: f64,
    #[arg(long, default_value_t = 1.0)]
    pub z_hat: f64,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Also compute the exact small-n distance from uniform (n <= 8, ell <= 2)
    #[arg(long)]
    pub exact: bool,
    /// Classical samples for --exact
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Write the transcript of the first honest run (JSON lines) here
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(default_value = "all")]
    pub suite: String,
}

pub struct Global {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Failure classes, mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Usage(String),
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Infeasible(m) => m,
        }
    }
}

impl From<nsot_core::Error> for Failure {
    fn from(e: nsot_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let global = Global {
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
    };
    let result = match cli.command {
        Command::Uncertainty(a) => commands::uncertainty(&a, &global),
        Command::Bounds(a) => commands::bounds(&a, &global),
        Command::Simulate(a) => commands::simulate(&a, &global),
        Command::Verify(a) => commands::verify(&a, &global),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("nsot: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
