//! Command-line front end: model spectra, Pauli decompositions, variational
//! imaginary-time evolution, transition-amplitude circuits and zero-noise
//! extrapolation, each run writing its artifacts plus a reproducibility
//! manifest into an output directory.

mod amp;
mod context;
mod inputs;
mod model;
mod pauli;
mod vqite;
mod zne;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::context::Result;

#[derive(Debug, Parser)]
#[command(name = "qvqite", version, about = "Charmonium spectra and radiative transitions on a simulated quantum computer")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Debug, Subcommand)]
enum Commands {
    /// Hamiltonian matrices, reference spectra, and basis-frequency sweeps.
    Model {
        #[command(subcommand)]
        action: model::ModelAction,
    },
    /// Decompose a channel or dipole matrix into a weighted Pauli sum.
    Pauli(pauli::PauliArgs),
    /// Variational imaginary-time evolution toward channel eigenstates.
    Vqite(vqite::VqiteArgs),
    /// Transition amplitudes from overlap and interference circuits.
    Amp(amp::AmpArgs),
    /// Zero-noise extrapolation of a noisy transition estimate.
    Zne(zne::ZneArgs),
}

/// How expectation values and populations are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Noise-free statevector arithmetic.
    Exact,
    /// Finite measurement shots, optionally noisy.
    Sampled,
}

impl ModeArg {
    pub fn label(self) -> &'static str {
        match self {
            ModeArg::Exact => "exact",
            ModeArg::Sampled => "sampled",
        }
    }
}

/// Measurement circuit family for transition amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    /// Prepare the ket, un-prepare the bra, read the all-zeros population.
    Direct,
    /// Ancilla-controlled swap between both state registers.
    Swap,
    /// Ancilla interference circuit per Pauli term of an operator.
    Hadamard,
}

impl MethodArg {
    pub fn label(self) -> &'static str {
        match self {
            MethodArg::Direct => "direct",
            MethodArg::Swap => "swap",
            MethodArg::Hadamard => "hadamard",
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Args, serde::Serialize)]
pub struct CommonArgs {
    /// Output directory for artifacts and the run manifest.
    #[arg(long, default_value = "qvqite-out", global = false)]
    pub out: PathBuf,
    /// Master seed; falls back to QVQITE_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for independent tasks.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Commands::Model { action } => model::run(action),
        Commands::Pauli(args) => pauli::run(args),
        Commands::Vqite(args) => vqite::run(args),
        Commands::Amp(args) => amp::run(args),
        Commands::Zne(args) => zne::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
