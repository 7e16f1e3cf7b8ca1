//! `zne` subcommand: zero-noise extrapolation of one spin-flip transition
//! estimate by global unitary folding, with a plot-ready series including
//! the extrapolated intercepts and the noise-free reference.

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

use qvqite_core::fmtnum::{csv_row, fmt_sig};
use qvqite_core::mitigation::{calibrate, fold_circuit, zne, Calibration, FoldingPlan, ScaleSeries};
use qvqite_core::params::Channel;
use qvqite_core::simulator::sampling::probs_from_counts;
use qvqite_core::simulator::{overlap_circuit, sample_counts, stream_rng, Circuit};
use qvqite_core::transitions::{
    direct_overlap_exact, swap_overlap_exact, swap_test_circuit, M1_TRANSITIONS,
};

use crate::context::{with_jobs, CliError, Result, RunContext};
use crate::inputs::{self, matrix_source, SourceArg, ThetaSource};
use crate::{CommonArgs, MethodArg};

#[derive(Debug, Args, Serialize)]
pub struct ZneArgs {
    /// Spin-flip transition label, e.g. 1_3S1->1_1S0.
    #[arg(long, default_value = "1_3S1->1_1S0")]
    transition: String,
    /// Measurement circuit to fold (direct or swap).
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
    /// Odd, strictly increasing folding scales starting at 1.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1u32, 3, 5, 7])]
    scales: Vec<u32>,
    /// Polynomial fit orders to extrapolate with.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1usize, 2])]
    orders: Vec<usize>,
    #[arg(long, default_value_t = 20000)]
    shots: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    trials: u64,
    /// Parametric bootstrap rounds for the intercept spread.
    #[arg(long, default_value_t = 200)]
    bootstrap: usize,
    /// Noise model: none, default-readout, default-depol, default-full, or
    /// a JSON file path.
    #[arg(long, default_value = "default-depol")]
    noise: String,
    #[arg(long)]
    mitigate_readout: bool,
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

pub fn run(args: ZneArgs) -> Result<()> {
    let transition = M1_TRANSITIONS
        .iter()
        .find(|t| t.label == args.transition)
        .copied()
        .ok_or_else(|| {
            let labels: Vec<&str> = M1_TRANSITIONS.iter().map(|t| t.label).collect();
            CliError::Usage(format!(
                "unknown transition {:?}; expected one of {}",
                args.transition,
                labels.join(", ")
            ))
        })?;
    if args.method == MethodArg::Hadamard {
        return Err(CliError::Usage(
            "zne folds the overlap circuits; use --method direct or swap".to_string(),
        ));
    }
    let plan = FoldingPlan {
        scales: args.scales.clone(),
        orders: args.orders.clone(),
        trials: args.trials as usize,
        bootstrap: args.bootstrap,
    };
    plan.validate()?;

    let seed = inputs::resolve_seed(args.common.seed)?;
    let mut ctx = RunContext::new(&args.common.out, seed)?;
    let noise = inputs::resolve_noise(Some(args.noise.as_str()), &mut ctx)?;
    let source = matrix_source(args.source, args.verbatim);

    let thetas = ThetaSource::from_eigenvectors(&Channel::ALL, source, args.omega)?;
    let ket = thetas.theta(transition.from.0, transition.from.1)?;
    let bra = thetas.theta(transition.to.0, transition.to.1)?;

    let (base, noise_free): (Circuit, f64) = match args.method {
        MethodArg::Direct => (overlap_circuit(&ket, &bra), direct_overlap_exact(&ket, &bra)?),
        MethodArg::Swap => (swap_test_circuit(&ket, &bra), swap_overlap_exact(&ket, &bra)?),
        MethodArg::Hadamard => unreachable!("rejected above"),
    };
    let calibration: Option<Calibration> = if args.mitigate_readout {
        let mut cal_rng = stream_rng(seed, "zne/cal");
        Some(calibrate(base.n_qubits, &noise, args.shots, &mut cal_rng)?)
    } else {
        None
    };

    // Estimate the underlying zero-outcome probability at every scale; the
    // extrapolation runs on probabilities, whose shot noise the bootstrap
    // models, and the swap statistic 2p-1 is recovered afterwards (an
    // affine map, so it commutes with the least-squares fit).
    let tasks: Vec<(u32, usize)> = plan
        .scales
        .iter()
        .flat_map(|&s| (0..plan.trials).map(move |t| (s, t)))
        .collect();
    let estimates: Vec<(u32, f64)> = with_jobs(args.common.jobs as usize, || {
        tasks
            .par_iter()
            .map(|&(scale, trial)| {
                let folded = fold_circuit(&base, scale)?;
                let mut rng = stream_rng(
                    seed,
                    &format!(
                        "zne/{}/{}/s{scale}/t{trial}",
                        transition.label,
                        args.method.label()
                    ),
                );
                let counts = sample_counts(&folded, args.shots, &noise, &mut rng)?;
                let probs = match &calibration {
                    Some(cal) => cal.mitigate_counts(&counts)?,
                    None => probs_from_counts(&counts),
                };
                let p = match args.method {
                    MethodArg::Direct => probs[0],
                    MethodArg::Swap => probs.iter().take(16).sum(),
                    MethodArg::Hadamard => unreachable!(),
                };
                Ok((scale, p))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let series: Vec<ScaleSeries> = plan
        .scales
        .iter()
        .map(|&scale| ScaleSeries {
            scale,
            shots: args.shots,
            per_trial: estimates
                .iter()
                .filter(|(s, _)| *s == scale)
                .map(|&(_, p)| p)
                .collect(),
        })
        .collect();

    let mut boot_rng = stream_rng(seed, "zne/bootstrap");
    let estimate = zne(&series, &plan.orders, plan.bootstrap, true, &mut boot_rng)?;

    // Map the probability-scale numbers onto the observable scale.
    let to_value = |p: f64| match args.method {
        MethodArg::Direct => p,
        _ => 2.0 * p - 1.0,
    };
    let err_factor = match args.method {
        MethodArg::Direct => 1.0,
        _ => 2.0,
    };

    let mut csv = csv_row(&["scale", "mean", "stderr"]);
    for ((&scale, &mean), &stderr) in estimate
        .scales
        .iter()
        .zip(&estimate.means)
        .zip(&estimate.stderrs)
    {
        csv.push('\n');
        csv.push_str(&csv_row(&[
            scale.to_string(),
            fmt_sig(to_value(mean), 9),
            fmt_sig(err_factor * stderr, 9),
        ]));
    }
    csv.push('\n');
    csv.push_str(&csv_row(&["order", "value", "bootstrap_std", "physical"]));
    for fit in &estimate.fits {
        let value = to_value(fit.value);
        let physical = (0.0..=1.0).contains(&value);
        csv.push('\n');
        csv.push_str(&csv_row(&[
            fit.order.to_string(),
            fmt_sig(value, 9),
            fmt_sig(err_factor * fit.bootstrap_std, 9),
            physical.to_string(),
        ]));
        println!(
            "order {}: {} +/- {} ({})",
            fit.order,
            fmt_sig(value, 6),
            fmt_sig(err_factor * fit.bootstrap_std, 6),
            if physical { "physical" } else { "unphysical" }
        );
    }
    csv.push('\n');
    ctx.write_text("zne.csv", &csv)?;

    let mut plot = csv_row(&["scale", "value", "series"]);
    for (&scale, &mean) in estimate.scales.iter().zip(&estimate.means) {
        plot.push('\n');
        plot.push_str(&csv_row(&[
            scale.to_string(),
            fmt_sig(to_value(mean), 9),
            "measured".to_string(),
        ]));
    }
    for fit in &estimate.fits {
        plot.push('\n');
        plot.push_str(&csv_row(&[
            "0".to_string(),
            fmt_sig(to_value(fit.value), 9),
            format!("order-{}", fit.order),
        ]));
    }
    plot.push('\n');
    plot.push_str(&csv_row(&[
        "0".to_string(),
        fmt_sig(noise_free, 9),
        "noise-free".to_string(),
    ]));
    plot.push('\n');
    ctx.write_text("zne_series.csv", &plot)?;

    println!(
        "unfolded estimate {} vs noise-free {}",
        fmt_sig(to_value(estimate.means[0]), 6),
        fmt_sig(noise_free, 6)
    );
    ctx.finish(serde_json::to_value(&args)?)
}
