//! Trajectory-level properties of the imaginary-time evolution: monotone
//! energy descent, the variational bound, and sampled-mode tracking of the
//! exact flow.

use qvqite_core::linalg::jacobi_eigh;
use qvqite_core::params::Channel;
use qvqite_core::pauliops::PauliSum;
use qvqite_core::quarkmodel::{hamiltonian_literal, LiteralVariant};
use qvqite_core::simulator::{stream_rng, NoiseModel};
use qvqite_core::vqite::{evolve, EvalMode, EvolutionConfig};

fn observable(channel: Channel) -> (PauliSum, f64) {
    let h = hamiltonian_literal(channel, LiteralVariant::SelfConsistent);
    let (eigs, _) = jacobi_eigh(&h).unwrap();
    (PauliSum::decompose(&h, 1e-12).unwrap(), eigs[0])
}

#[test]
fn exact_energy_descends_monotonically_after_warmup() {
    for channel in Channel::ALL {
        let (obs, _) = observable(channel);
        let config = EvolutionConfig::exact();
        let mut rng = stream_rng(201, "mono");
        let run = evolve(&obs, &[], &config, &EvalMode::Exact, &mut rng).unwrap();
        for pair in run.trace[10..].windows(2) {
            assert!(
                pair[1].energy <= pair[0].energy + 1e-9,
                "{channel:?}: energy rose from {} to {} at step {}",
                pair[0].energy,
                pair[1].energy,
                pair[1].step
            );
        }
    }
}

#[test]
fn exact_energies_respect_variational_bound() {
    for channel in Channel::ALL {
        let (obs, lowest) = observable(channel);
        let config = EvolutionConfig::exact();
        let mut rng = stream_rng(202, "bound");
        let run = evolve(&obs, &[], &config, &EvalMode::Exact, &mut rng).unwrap();
        for row in &run.trace {
            assert!(
                row.energy >= lowest - 1e-9,
                "{channel:?}: step {} energy {} dips below {lowest}",
                row.step,
                row.energy
            );
        }
    }
}

#[test]
fn sampled_trajectory_tracks_exact_flow_after_convergence() {
    let trials = 20;
    let shots = 20_000;
    let tail = 50;
    for channel in Channel::ALL {
        let (obs, _) = observable(channel);
        let mut rng = stream_rng(203, "track-exact");
        let exact =
            evolve(&obs, &[], &EvolutionConfig::exact(), &EvalMode::Exact, &mut rng).unwrap();
        let target = exact.energy;

        let mut tail_means = Vec::with_capacity(trials);
        for k in 0..trials {
            let mut rng = stream_rng(203, &format!("track/{}/{k}", channel.label()));
            let mode = EvalMode::sampled(shots, NoiseModel::none());
            let run =
                evolve(&obs, &[], &EvolutionConfig::sampled(), &mode, &mut rng).unwrap();
            let late = &run.trace[run.trace.len() - tail..];
            tail_means.push(late.iter().map(|r| r.energy).sum::<f64>() / tail as f64);
        }
        let mean = tail_means.iter().sum::<f64>() / trials as f64;
        assert!(
            (mean - target).abs() < 0.05,
            "{channel:?}: sampled tail mean {mean} vs exact {target}"
        );
    }
}
