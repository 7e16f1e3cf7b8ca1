//! `amp` subcommand: spin-flip overlaps and orbital dipole elements from
//! measurement circuits, one CSV row per transition.

use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use qvqite_core::fmtnum::{csv_row, fmt_sig};
use qvqite_core::mitigation::{calibrate, Calibration};
use qvqite_core::params::Channel;
use qvqite_core::pauliops::PauliSum;
use qvqite_core::simulator::{stream_rng, NoiseModel};
use qvqite_core::transitions::{
    direct_overlap_exact, direct_overlap_sampled, matrix_element_exact, matrix_element_sampled,
    swap_overlap_exact, swap_overlap_sampled, trial_stats, Transition, E1_TRANSITIONS,
    M1_TRANSITIONS,
};
use qvqite_core::vqite::Theta;

use crate::context::{with_jobs, CliError, Result, RunContext};
use crate::inputs::{self, matrix_source, SourceArg, ThetaSource};
use crate::{CommonArgs, MethodArg, ModeArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmpKind {
    /// Spin-flip squared overlaps between the S-wave channels.
    M1,
    /// Orbital dipole-length elements between the P and singlet-S channels.
    E1,
}

#[derive(Debug, Args, Serialize)]
pub struct AmpArgs {
    /// Transition family to evaluate.
    #[arg(value_enum)]
    kind: AmpKind,
    /// Measurement circuit; defaults to direct for m1, hadamard for e1.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, default_value_t = 20000)]
    shots: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Noise model: none, default-readout, default-depol, default-full, or
    /// a JSON file path.
    #[arg(long)]
    noise: Option<String>,
    #[arg(long)]
    mitigate_readout: bool,
    /// Run directories (one per channel) whose evolved angles replace the
    /// eigenvector-derived defaults.
    #[arg(long, num_args = 1..)]
    theta_from: Vec<PathBuf>,
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

struct Row {
    label: &'static str,
    value: f64,
    stderr: f64,
}

pub fn run(args: AmpArgs) -> Result<()> {
    let method = args.method.unwrap_or(match args.kind {
        AmpKind::M1 => MethodArg::Direct,
        AmpKind::E1 => MethodArg::Hadamard,
    });
    let allowed: &[MethodArg] = match args.kind {
        AmpKind::M1 => &[MethodArg::Direct, MethodArg::Swap],
        AmpKind::E1 => &[MethodArg::Hadamard],
    };
    if !allowed.contains(&method) {
        return Err(CliError::Usage(format!(
            "method {} does not measure {} transitions",
            method.label(),
            match args.kind {
                AmpKind::M1 => "m1",
                AmpKind::E1 => "e1",
            }
        )));
    }

    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;
    let source = matrix_source(args.source, args.verbatim);

    let thetas = if args.theta_from.is_empty() {
        ThetaSource::from_eigenvectors(&Channel::ALL, source, args.omega)?
    } else {
        ThetaSource::from_run_dirs(&args.theta_from, &mut ctx)?
    };

    let dipole = match args.kind {
        AmpKind::E1 => Some(PauliSum::decompose(
            &inputs::dipole_matrix(source, args.omega)?,
            1e-12,
        )?),
        AmpKind::M1 => None,
    };

    let transitions: &[Transition] = match args.kind {
        AmpKind::M1 => &M1_TRANSITIONS,
        AmpKind::E1 => &E1_TRANSITIONS,
    };
    // Bra/ket angle pair per transition; for dipole rows the bra is always
    // the P-channel state regardless of emission direction.
    let pairs: Vec<(&'static str, Theta, Theta)> = transitions
        .iter()
        .map(|t| {
            let (ket, bra) = match args.kind {
                AmpKind::M1 => (
                    thetas.theta(t.from.0, t.from.1)?,
                    thetas.theta(t.to.0, t.to.1)?,
                ),
                AmpKind::E1 => {
                    let (p, s) = t.p_s_levels();
                    (thetas.theta(Channel::OneS0, s)?, thetas.theta(Channel::OneP1, p)?)
                }
            };
            Ok((t.label, ket, bra))
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = match args.mode {
        ModeArg::Exact => {
            if args.noise.is_some() || args.mitigate_readout {
                return Err(CliError::Usage(
                    "exact mode takes no noise model or readout mitigation".to_string(),
                ));
            }
            exact_rows(&pairs, method, dipole.as_ref())?
        }
        ModeArg::Sampled => {
            let noise = inputs::resolve_noise(args.noise.as_deref(), &mut ctx)?;
            let calibration = if args.mitigate_readout {
                let n_qubits = match method {
                    MethodArg::Direct => 2,
                    MethodArg::Hadamard => 3,
                    MethodArg::Swap => 5,
                };
                let mut cal_rng = stream_rng(seed, "amp/cal");
                Some(calibrate(n_qubits, &noise, args.shots, &mut cal_rng)?)
            } else {
                None
            };
            sampled_rows(&args, &pairs, method, dipole.as_ref(), &noise, calibration, seed)?
        }
    };

    let mut csv = csv_row(&["transition", "method", "mode", "shots", "trials", "value", "stderr"]);
    for row in &rows {
        let (shots, trials) = match args.mode {
            ModeArg::Exact => (0, 1),
            ModeArg::Sampled => (args.shots, args.trials),
        };
        csv.push('\n');
        csv.push_str(&csv_row(&[
            row.label.to_string(),
            method.label().to_string(),
            args.mode.label().to_string(),
            shots.to_string(),
            trials.to_string(),
            fmt_sig(row.value, 9),
            fmt_sig(row.stderr, 9),
        ]));
        println!(
            "{}: {} +/- {}",
            row.label,
            fmt_sig(row.value, 6),
            fmt_sig(row.stderr, 6)
        );
    }
    csv.push('\n');
    ctx.write_text("amplitudes.csv", &csv)?;
    ctx.finish(serde_json::to_value(&args)?)
}

fn exact_rows(
    pairs: &[(&'static str, Theta, Theta)],
    method: MethodArg,
    dipole: Option<&PauliSum>,
) -> Result<Vec<Row>> {
    pairs
        .iter()
        .map(|(label, ket, bra)| {
            let value = match method {
                MethodArg::Direct => direct_overlap_exact(ket, bra)?,
                MethodArg::Swap => swap_overlap_exact(ket, bra)?,
                MethodArg::Hadamard => {
                    matrix_element_exact(ket, bra, dipole.expect("dipole sum for e1")) ?.norm()
                }
            };
            Ok(Row { label, value, stderr: 0.0 })
        })
        .collect()
}

fn sampled_rows(
    args: &AmpArgs,
    pairs: &[(&'static str, Theta, Theta)],
    method: MethodArg,
    dipole: Option<&PauliSum>,
    noise: &NoiseModel,
    calibration: Option<Calibration>,
    seed: u64,
) -> Result<Vec<Row>> {
    let kind_tag = match args.kind {
        AmpKind::M1 => "m1",
        AmpKind::E1 => "e1",
    };
    // One RNG stream per (transition, trial) so results do not depend on
    // scheduling order.
    let trials = args.trials as usize;
    let tasks: Vec<(usize, usize)> = (0..pairs.len())
        .flat_map(|i| (0..trials).map(move |t| (i, t)))
        .collect();
    let estimates: Vec<(usize, f64)> = with_jobs(args.common.jobs as usize, || {
        tasks
            .par_iter()
            .map(|&(i, t)| {
                let (label, ket, bra) = &pairs[i];
                let mut rng = stream_rng(
                    seed,
                    &format!("amp/{kind_tag}/{label}/{}/t{t}", method.label()),
                );
                let cal = calibration.as_ref();
                let value = match method {
                    MethodArg::Direct => {
                        direct_overlap_sampled(ket, bra, args.shots, noise, &mut rng, cal)?
                    }
                    MethodArg::Swap => {
                        swap_overlap_sampled(ket, bra, args.shots, noise, &mut rng, cal)?
                    }
                    MethodArg::Hadamard => matrix_element_sampled(
                        ket,
                        bra,
                        dipole.expect("dipole sum for e1"),
                        args.shots,
                        noise,
                        &mut rng,
                        cal,
                    )?
                    .norm(),
                };
                Ok((i, value))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut per_transition: Vec<Vec<f64>> = vec![Vec::with_capacity(trials); pairs.len()];
    for (i, value) in estimates {
        per_transition[i].push(value);
    }
    Ok(pairs
        .iter()
        .zip(per_transition)
        .map(|((label, _, _), values)| {
            let (value, stderr) = trial_stats(&values);
            Row { label, value, stderr }
        })
        .collect())
}
