//! `pauli` subcommand: decompose a 2^n x 2^n matrix into weighted Pauli
//! strings and emit both a machine-readable sum and a coefficient table.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use qvqite_core::fmtnum::fmt_sig;
use qvqite_core::linalg::Mat;
use qvqite_core::params::Channel;
use qvqite_core::pauliops::PauliSum;

use crate::context::{CliError, Result, RunContext};
use crate::inputs::{self, matrix_source, SourceArg};
use crate::CommonArgs;

#[derive(Debug, Args, Serialize)]
pub struct PauliArgs {
    /// Matrix JSON file produced by `model matrices` (or hand-written in
    /// the same layout).
    #[arg(long, conflicts_with_all = ["channel", "dipole"])]
    input: Option<PathBuf>,
    /// Decompose a built-in channel Hamiltonian instead of a file.
    #[arg(long)]
    channel: Option<Channel>,
    /// Decompose the dipole-length matrix instead of a Hamiltonian.
    #[arg(long, conflicts_with = "channel")]
    dipole: bool,
    #[arg(long, value_enum, default_value_t = SourceArg::Literal)]
    source: SourceArg,
    #[arg(long, default_value_t = 1.2)]
    omega: f64,
    #[arg(long)]
    verbatim: bool,
    /// Rebuild the matrix from the sum and report the largest deviation.
    #[arg(long)]
    roundtrip: bool,
    #[command(flatten)]
    #[serde(flatten)]
    common: CommonArgs,
}

pub fn run(args: PauliArgs) -> Result<()> {
    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;

    let (mat, name): (Mat, String) = if let Some(path) = &args.input {
        let export = inputs::load_matrix(path, &mut ctx)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".to_string());
        (export.to_mat()?, stem)
    } else {
        let source = matrix_source(args.source, args.verbatim);
        if args.dipole {
            (inputs::dipole_matrix(source, args.omega)?, format!("dipole_{}", source.tag()))
        } else if let Some(channel) = args.channel {
            (
                inputs::channel_hamiltonian(channel, source, args.omega)?,
                format!("{}_{}", channel.label(), source.tag()),
            )
        } else {
            return Err(CliError::Usage(
                "nothing to decompose: pass --input, --channel or --dipole".to_string(),
            ));
        }
    };

    let sum = PauliSum::decompose(&mat, 1e-12)?;
    ctx.write_json(&format!("pauli_{name}.json"), &sum.to_json())?;

    let mut table = String::new();
    for term in sum.terms() {
        let line = if term.coeff.im == 0.0 {
            format!("{}  {}", term.string.label(), fmt_sig(term.coeff.re, 9))
        } else {
            format!(
                "{}  {} {:+}i",
                term.string.label(),
                fmt_sig(term.coeff.re, 9),
                term.coeff.im
            )
        };
        println!("{line}");
        table.push_str(&line);
        table.push('\n');
    }

    if args.roundtrip {
        let rebuilt = sum.reconstruct_real();
        let mut max_dev = 0.0f64;
        for i in 0..mat.n_rows() {
            for j in 0..mat.n_cols() {
                max_dev = max_dev.max((rebuilt[(i, j)] - mat[(i, j)]).abs());
            }
        }
        let line = format!("roundtrip max |deviation| = {:e}", max_dev);
        println!("{line}");
        table.push_str(&line);
        table.push('\n');
    }

    ctx.write_text(&format!("pauli_{name}.txt"), &table)?;
    ctx.finish(serde_json::to_value(&args)?)
}
