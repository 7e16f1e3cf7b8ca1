//! Shot sampling and sampled expectation values.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::Result;
use crate::mitigation::Calibration;
use crate::pauliops::{PauliAxis, PauliSum};

use super::gate::Gate;
use super::noise::{readout_flip, NoiseModel};
use super::Circuit;

/// Draw multinomial counts for `shots` trials over `probs` using chained
/// binomials, so the cost is linear in the number of outcomes rather than
/// in the number of shots.
pub fn multinomial_counts(probs: &[f64], shots: u64, rng: &mut impl Rng) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass_left: f64 = probs.iter().sum();
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i + 1 == probs.len() || mass_left <= p {
            counts[i] = remaining;
            break;
        }
        let q = (p / mass_left).clamp(0.0, 1.0);
        let draw = Binomial::new(remaining, q)
            .expect("probability clamped to [0, 1]")
            .sample(rng);
        counts[i] = draw;
        remaining -= draw;
        mass_left -= p;
    }
    counts
}

/// Measure the circuit `shots` times in the computational basis.
///
/// Without depolarizing noise the exact output distribution is known, so
/// readout errors are applied to the probabilities analytically and a single
/// multinomial draw produces the counts. With depolarizing noise each shot
/// runs its own stochastic trajectory and readout errors flip the sampled
/// bitstring directly.
pub fn sample_counts(
    circuit: &Circuit,
    shots: u64,
    noise: &NoiseModel,
    rng: &mut impl Rng,
) -> Result<Vec<u64>> {
    let dim = 1usize << circuit.n_qubits;
    if !noise.has_depol() {
        let mut probs = circuit.run()?.probabilities();
        if noise.has_readout() {
            probs = noise.apply_readout_to_probs(&probs, circuit.n_qubits)?;
        }
        return Ok(multinomial_counts(&probs, shots, rng));
    }
    let pairs = noise.readout_pairs(circuit.n_qubits)?;
    let mut counts = vec![0u64; dim];
    for _ in 0..shots {
        let probs = circuit.run_trajectory(noise, rng)?.probabilities();
        let mut outcome = sample_index(&probs, rng);
        if noise.has_readout() {
            outcome = readout_flip(outcome, &pairs, rng);
        }
        counts[outcome] += 1;
    }
    Ok(counts)
}

fn sample_index(probs: &[f64], rng: &mut impl Rng) -> usize {
    let mut x: f64 = rng.gen::<f64>() * probs.iter().sum::<f64>();
    for (i, &p) in probs.iter().enumerate() {
        x -= p;
        if x <= 0.0 {
            return i;
        }
    }
    probs.len() - 1
}

/// Normalized frequencies from counts.
pub fn probs_from_counts(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return vec![0.0; counts.len()];
    }
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

/// Expectation of a Z-string with support `mask` under outcome frequencies:
/// sum of p(b) * (-1)^popcount(b & mask).
pub fn parity_expectation(probs: &[f64], mask: usize) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(b, &p)| if (b & mask).count_ones() % 2 == 0 { p } else { -p })
        .sum()
}

/// Basis-change gates mapping a Pauli measurement to the Z basis:
/// H for X, RX(pi/2) for Y.
fn measurement_rotations(axes: &[PauliAxis]) -> Vec<Gate> {
    let mut gates = Vec::new();
    for (q, axis) in axes.iter().enumerate() {
        match axis {
            PauliAxis::X => gates.push(Gate::H { q }),
            PauliAxis::Y => gates.push(Gate::Rx { q, theta: std::f64::consts::FRAC_PI_2 }),
            PauliAxis::I | PauliAxis::Z => {}
        }
    }
    gates
}

/// Sampled expectation value of a real Pauli-sum observable, with the
/// standard error propagated across terms.
///
/// Each non-identity term gets the full shot budget in its own rotated
/// measurement basis; identity terms contribute their coefficient exactly.
/// When a readout calibration is supplied, each term's counts are corrected
/// before the parity average.
pub fn expval_sampled(
    prep: &Circuit,
    observable: &PauliSum,
    shots: u64,
    noise: &NoiseModel,
    rng: &mut impl Rng,
    calibration: Option<&Calibration>,
) -> Result<(f64, f64)> {
    let n = prep.n_qubits;
    let mut total = 0.0;
    let mut variance = 0.0f64;
    for term in observable.terms() {
        if term.string.is_identity() {
            total += term.coeff.re;
            continue;
        }
        let mut circuit = prep.clone();
        for g in measurement_rotations(&term.string.0) {
            circuit.push(g);
        }
        let counts = sample_counts(&circuit, shots, noise, rng)?;
        let probs = match calibration {
            Some(cal) => cal.mitigate_counts(&counts)?,
            None => probs_from_counts(&counts),
        };
        let mask = term
            .string
            .0
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != PauliAxis::I)
            .fold(0usize, |m, (q, _)| m | (1 << (n - 1 - q)));
        let est = parity_expectation(&probs, mask);
        total += term.coeff.re * est;
        variance += term.coeff.re.powi(2) * (1.0 - est * est).max(0.0) / shots as f64;
    }
    Ok((total, variance.sqrt()))
}

/// Sampled estimate of the all-zeros population of a circuit.
pub fn measure_p00(
    circuit: &Circuit,
    shots: u64,
    noise: &NoiseModel,
    rng: &mut impl Rng,
    calibration: Option<&Calibration>,
) -> Result<f64> {
    let counts = sample_counts(circuit, shots, noise, rng)?;
    let probs = match calibration {
        Some(cal) => cal.mitigate_counts(&counts)?,
        None => probs_from_counts(&counts),
    };
    Ok(probs[0])
}
