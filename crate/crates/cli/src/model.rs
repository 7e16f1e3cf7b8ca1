//! `model` subcommands: matrix export, radial-equation spectra, basis
//! diagonalization with tabulated comparisons, and omega sweeps.

use clap::{Args, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use qvqite_core::fmtnum::{csv_row, fmt_sig};
use qvqite_core::params::{Channel, ModelParams};
use qvqite_core::quarkmodel::literals::diag_reference;
use qvqite_core::quarkmodel::sweep::omega_grid;
use qvqite_core::quarkmodel::{
    self, diagonalize, solve_radial, spectrum_csv, MatrixExport, NumerovGrid, SweepRow,
};

use crate::context::{with_jobs, Result, RunContext};
use crate::inputs::{self, dipole_matrix, matrix_source, SourceArg};
use crate::CommonArgs;

#[derive(Debug, Subcommand)]
pub enum ModelAction {
    /// Write channel Hamiltonians (and optionally the dipole matrix) as JSON.
    Matrices(MatricesArgs),
    /// Integrate the radial equation: level energies and meson masses.
    Exact(ExactArgs),
    /// Diagonalize the four-state matrix and compare with the tabulated spectrum.
    Diag(DiagArgs),
    /// Scan the basis frequency, recording all four variational levels.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct MatricesArgs {
    /// Channel: 1S0, 3S1 or 1P1.
    #[arg(long)]
    channel: Channel,
    /// Matrix provenance to export.
    #[arg(long, value_enum, default_value_t = SourceArg::Both)]
    source: SourceArg,
    /// Oscillator frequency (fm^-1) for computed matrices.
    #[arg(long, default_value_t = 1.2)]
    omega: f64,
    /// Keep the tabulated matrices exactly as printed, including the
    /// inconsistent spin-splitting entry.
    #[arg(long)]
    verbatim: bool,
    /// Also export the dipole-length matrix.
    #[arg(long)]
    dipole: bool,
    #[command(flatten)]
    #[serde(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ExactArgs {
    #[arg(long)]
    channel: Channel,
    /// Number of levels to solve for.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=4))]
    levels: u64,
    #[command(flatten)]
    #[serde(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct DiagArgs {
    #[arg(long)]
    channel: Channel,
    #[arg(long, value_enum, default_value_t = SourceArg::Literal)]
    source: SourceArg,
    #[arg(long, default_value_t = 1.2)]
    omega: f64,
    #[arg(long)]
    verbatim: bool,
    #[command(flatten)]
    #[serde(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    channel: Channel,
    #[arg(long, default_value_t = 0.8)]
    omega_min: f64,
    #[arg(long, default_value_t = 2.0)]
    omega_max: f64,
    #[arg(long, default_value_t = 0.05)]
    omega_step: f64,
    #[command(flatten)]
    #[serde(flatten)]
    common: CommonArgs,
}

pub fn run(action: ModelAction) -> Result<()> {
    match action {
        ModelAction::Matrices(args) => matrices(args),
        ModelAction::Exact(args) => exact(args),
        ModelAction::Diag(args) => diag(args),
        ModelAction::Sweep(args) => sweep(args),
    }
}

fn matrices(args: MatricesArgs) -> Result<()> {
    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;
    let sources: &[SourceArg] = match args.source {
        SourceArg::Both => &[SourceArg::Computed, SourceArg::Literal],
        one => std::slice::from_ref(match one {
            SourceArg::Computed => &SourceArg::Computed,
            _ => &SourceArg::Literal,
        }),
    };
    for &source_arg in sources {
        let source = matrix_source(source_arg, args.verbatim);
        let h = inputs::channel_hamiltonian(args.channel, source, args.omega)?;
        let export = MatrixExport::new(&h, "fm^-1", source.tag(), args.channel.label());
        let name = format!("matrix_{}_{}.json", args.channel.label(), source.tag());
        ctx.write_json(&name, &serde_json::to_value(&export)?)?;
        if args.dipole {
            let d = dipole_matrix(source, args.omega)?;
            let export = MatrixExport::new(&d, "fm", source.tag(), "E1");
            ctx.write_json(&format!("dipole_{}.json", source.tag()), &serde_json::to_value(&export)?)?;
        }
    }
    println!("wrote {} matrix set for {}", args.source_label(), args.channel);
    ctx.finish(serde_json::to_value(&args)?)
}

impl MatricesArgs {
    fn source_label(&self) -> &'static str {
        match self.source {
            SourceArg::Computed => "computed",
            SourceArg::Literal => "literal",
            SourceArg::Both => "computed+literal",
        }
    }
}

fn exact(args: ExactArgs) -> Result<()> {
    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;
    let params = ModelParams::default();
    let solutions =
        solve_radial(&params, args.channel, args.levels as usize, &NumerovGrid::default())?;
    let energies: Vec<f64> = solutions.iter().map(|s| s.energy).collect();
    let csv = spectrum_csv(&energies, &params, 9);
    ctx.write_text(&format!("spectrum_{}.csv", args.channel.label()), &csv)?;
    for (k, &e) in energies.iter().enumerate() {
        println!(
            "{} level {}: E = {} fm^-1, mass = {} MeV",
            args.channel,
            k + 1,
            fmt_sig(e, 6),
            fmt_sig(params.mass_from_energy(e), 6)
        );
    }
    ctx.finish(serde_json::to_value(&args)?)
}

fn diag(args: DiagArgs) -> Result<()> {
    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;
    let source = matrix_source(args.source, args.verbatim);
    let h = inputs::channel_hamiltonian(args.channel, source, args.omega)?;
    let (energies, _) = diagonalize(&h)?;

    let mut csv = csv_row(&["E1", "E2", "E3", "E4"]);
    csv.push('\n');
    let row: Vec<String> = energies.iter().map(|&e| fmt_sig(e, 9)).collect();
    csv.push_str(&csv_row(&row));
    csv.push('\n');
    let base = format!("eigenvalues_{}_{}", args.channel.label(), source.tag());
    ctx.write_text(&format!("{base}.csv"), &csv)?;

    // The printed reference spectrum carries its own rounding; record the
    // residual of every level alongside the comparison.
    let reference = diag_reference(args.channel);
    let mut cmp = csv_row(&["level", "eigenvalue", "tabulated", "residual"]);
    for (k, (&e, &tab)) in energies.iter().zip(reference.iter()).enumerate() {
        cmp.push('\n');
        cmp.push_str(&csv_row(&[
            (k + 1).to_string(),
            fmt_sig(e, 9),
            fmt_sig(tab, 9),
            fmt_sig(e - tab, 9),
        ]));
        println!(
            "{} level {}: {} (tabulated {}, residual {})",
            args.channel,
            k + 1,
            fmt_sig(e, 6),
            fmt_sig(tab, 6),
            fmt_sig(e - tab, 3)
        );
    }
    cmp.push('\n');
    ctx.write_text(&format!("{base}_vs_reference.csv"), &cmp)?;
    ctx.finish(serde_json::to_value(&args)?)
}

fn sweep(args: SweepArgs) -> Result<()> {
    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;
    let params = ModelParams::default();
    let omegas = omega_grid(args.omega_min, args.omega_max, args.omega_step);
    let rows: Vec<SweepRow> = with_jobs(args.common.jobs as usize, || {
        omegas
            .par_iter()
            .map(|&omega| {
                let rows = quarkmodel::omega_sweep(&params, args.channel, &[omega])?;
                Ok(rows.into_iter().next().expect("one row per omega"))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let csv = quarkmodel::sweep_csv(&rows, 9);
    ctx.write_text(&format!("sweep_{}.csv", args.channel.label()), &csv)?;
    println!(
        "swept {} omegas in [{}, {}] for {}",
        rows.len(),
        fmt_sig(args.omega_min, 3),
        fmt_sig(args.omega_max, 3),
        args.channel
    );
    ctx.finish(serde_json::to_value(&args)?)
}
