//! `vqite` subcommand: imaginary-time evolution of the hardware ansatz
//! toward successive channel eigenstates, with per-state trace CSVs and a
//! spectrum summary.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use qvqite_core::fmtnum::{csv_row, fmt_sig};
use qvqite_core::params::Channel;
use qvqite_core::pauliops::PauliSum;
use qvqite_core::simulator::stream_rng;
use qvqite_core::vqite::{evolve, EvalMode, EvolutionConfig, EvolutionResult, Theta};

use crate::context::{CliError, Result, RunContext};
use crate::inputs::{self, matrix_source, read_spectrum_thetas, SourceArg};
use crate::{CommonArgs, ModeArg};

#[derive(Debug, Args, Serialize)]
pub struct VqiteArgs {
    /// Built-in channel Hamiltonian to evolve under.
    #[arg(long, conflicts_with = "hamiltonian")]
    channel: Option<Channel>,
    /// Matrix JSON file to evolve under instead of a named channel.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SourceArg::Literal)]
    source: SourceArg,
    #[arg(long, default_value_t = 1.2)]
    omega: f64,
    #[arg(long)]
    verbatim: bool,
    /// Number of eigenstates to find by sequential deflation.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=4))]
    states: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, default_value_t = 20000)]
    shots: u64,
    /// Noise model: none, default-readout, default-depol, default-full, or
    /// a JSON file path.
    #[arg(long)]
    noise: Option<String>,
    /// Calibrate the readout confusion matrix first and unfold it from
    /// every sampled distribution.
    #[arg(long)]
    mitigate_readout: bool,
    /// Run directories whose converged states are deflated away before the
    /// first evolution here.
    #[arg(long, num_args = 1..)]
    deflate: Vec<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    common: CommonArgs,
}

pub fn run(args: VqiteArgs) -> Result<()> {
    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;

    let (h, channel_tag) = if let Some(path) = &args.hamiltonian {
        let export = inputs::load_matrix(path, &mut ctx)?;
        let tag = export.channel.clone();
        (export.to_mat()?, tag)
    } else if let Some(channel) = args.channel {
        let source = matrix_source(args.source, args.verbatim);
        (
            inputs::channel_hamiltonian(channel, source, args.omega)?,
            channel.label().to_string(),
        )
    } else {
        return Err(CliError::Usage(
            "nothing to evolve under: pass --channel or --hamiltonian".to_string(),
        ));
    };
    let observable = PauliSum::decompose(&h, 1e-12)?;

    let mode = match args.mode {
        ModeArg::Exact => {
            if args.noise.is_some() || args.mitigate_readout {
                return Err(CliError::Usage(
                    "exact mode takes no noise model or readout mitigation".to_string(),
                ));
            }
            EvalMode::Exact
        }
        ModeArg::Sampled => {
            let noise = inputs::resolve_noise(args.noise.as_deref(), &mut ctx)?;
            let calibration = if args.mitigate_readout {
                let mut cal_rng = stream_rng(seed, "vqite/cal");
                Some(qvqite_core::mitigation::calibrate(2, &noise, args.shots, &mut cal_rng)?)
            } else {
                None
            };
            EvalMode::Sampled { shots: args.shots, noise, calibration }
        }
    };
    let config = EvolutionConfig::for_mode(&mode);

    let mut deflation: Vec<Theta> = Vec::new();
    for dir in &args.deflate {
        let (label, thetas) = read_spectrum_thetas(dir, &mut ctx)?;
        if label != channel_tag {
            return Err(CliError::Usage(format!(
                "{}: deflation states belong to {label}, not {channel_tag}",
                dir.display()
            )));
        }
        deflation.extend(thetas);
    }
    let prior_deflation = deflation.len();

    let mut rng = stream_rng(seed, "vqite");
    let mut results: Vec<EvolutionResult> = Vec::with_capacity(args.states as usize);
    for _ in 0..args.states {
        let r = evolve(&observable, &deflation, &config, &mode, &mut rng)?;
        deflation.push(r.theta);
        results.push(r);
    }

    for (k, r) in results.iter().enumerate() {
        ctx.write_text(&format!("trace_state{}.csv", k + 1), &trace_csv(r))?;
        println!(
            "state {}: E = {} fm^-1 after {} steps (converged: {})",
            k + 1,
            fmt_sig(r.energy, 6),
            r.steps,
            r.converged
        );
    }

    let summary = serde_json::json!({
        "channel": channel_tag,
        "mode": args.mode.label(),
        "shots": if matches!(args.mode, ModeArg::Sampled) { Some(args.shots) } else { None },
        "prior_deflation": prior_deflation,
        "states": results
            .iter()
            .enumerate()
            .map(|(k, r)| {
                serde_json::json!({
                    "index": k + 1,
                    "energy": r.energy,
                    "penalized": r.penalized,
                    "theta": r.theta,
                    "steps": r.steps,
                    "converged": r.converged,
                })
            })
            .collect::<Vec<_>>(),
    });
    ctx.write_json("spectrum.json", &summary)?;
    ctx.finish(serde_json::to_value(&args)?)?;

    if let Some(k) = results.iter().position(|r| !r.converged) {
        return Err(CliError::NoConvergence(format!(
            "state {} did not meet the stopping rule within {} steps",
            k + 1,
            config.max_steps
        )));
    }
    Ok(())
}

fn trace_csv(result: &EvolutionResult) -> String {
    let mut out = csv_row(&["step", "tau", "E", "theta0", "theta1", "theta2", "theta_dot_norm"]);
    for row in &result.trace {
        out.push('\n');
        out.push_str(&csv_row(&[
            row.step.to_string(),
            fmt_sig(row.tau, 9),
            fmt_sig(row.energy, 9),
            fmt_sig(row.theta[0], 9),
            fmt_sig(row.theta[1], 9),
            fmt_sig(row.theta[2], 9),
            fmt_sig(row.theta_dot_norm, 9),
        ]));
    }
    out.push('\n');
    out
}
