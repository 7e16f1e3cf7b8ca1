//! Small statevector circuit simulator with shot sampling and noise.

pub mod gate;
pub mod noise;
pub mod rng;
pub mod sampling;
pub mod state;

pub use gate::Gate;
pub use noise::NoiseModel;
pub use rng::stream_rng;
pub use sampling::{expval_sampled, measure_p00, sample_counts};
pub use state::StateVector;

use crate::error::Result;
use rand::Rng;

/// Ordered gate list over a fixed-width register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    /// Gates of `other` appended after this circuit's gates.
    pub fn then(&self, other: &Circuit) -> Circuit {
        let mut c = Circuit::new(self.n_qubits.max(other.n_qubits));
        c.gates.extend(self.gates.iter().cloned());
        c.gates.extend(other.gates.iter().cloned());
        c
    }

    /// Exact inverse: reversed gate order, each gate inverted.
    pub fn inverted(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Same gates moved up by `offset` qubits on a wider register.
    pub fn shifted(&self, offset: usize, n_qubits: usize) -> Circuit {
        assert!(self.n_qubits + offset <= n_qubits);
        Circuit {
            n_qubits,
            gates: self.gates.iter().map(|g| g.map_qubits(&|q| q + offset)).collect(),
        }
    }

    /// Promote every gate to its controlled version on `control`.
    pub fn controlled(&self, control: usize) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits.max(control + 1),
            gates: self
                .gates
                .iter()
                .map(|g| g.clone().controlled(control))
                .collect(),
        }
    }

    /// Noise-free statevector.
    pub fn run(&self) -> Result<StateVector> {
        let mut s = StateVector::zero(self.n_qubits);
        for g in &self.gates {
            s.apply(g)?;
        }
        Ok(s)
    }

    /// One stochastic trajectory: after each gate, with the support-sized
    /// depolarizing probability, a uniformly random non-identity Pauli acts
    /// on that gate's qubits.
    pub fn run_trajectory(&self, noise: &NoiseModel, rng: &mut impl Rng) -> Result<StateVector> {
        let mut s = StateVector::zero(self.n_qubits);
        for g in &self.gates {
            s.apply(g)?;
            let support = g.qubits();
            let p = noise.depol_prob(support.len());
            if p > 0.0 && rng.gen::<f64>() < p {
                let err = noise::random_error_pauli(self.n_qubits, &support, rng);
                s.apply(&Gate::Pauli { string: err })?;
            }
        }
        Ok(s)
    }
}

/// Hardware-efficient two-qubit ansatz: RY(t0) on qubit 0, CNOT(0 -> 1),
/// RY(t1) on qubit 0, RY(t2) on qubit 1. Real amplitudes, three parameters.
pub fn ansatz_circuit(theta: &[f64]) -> Circuit {
    assert_eq!(theta.len(), 3, "ansatz takes three angles");
    let mut c = Circuit::new(2);
    c.push(Gate::Ry { q: 0, theta: theta[0] });
    c.push(Gate::Cnot { control: 0, target: 1 });
    c.push(Gate::Ry { q: 0, theta: theta[1] });
    c.push(Gate::Ry { q: 1, theta: theta[2] });
    c
}

/// Statevector prepared by the ansatz.
pub fn ansatz_state(theta: &[f64]) -> StateVector {
    ansatz_circuit(theta).run().expect("fixed two-qubit circuit")
}

/// Circuit whose |00> population equals |<psi(theta_bra)|psi(theta_ket)>|^2:
/// prepare the ket, then un-prepare the bra.
pub fn overlap_circuit(theta_ket: &[f64], theta_bra: &[f64]) -> Circuit {
    ansatz_circuit(theta_ket).then(&ansatz_circuit(theta_bra).inverted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    /// Closed form of the ansatz state: the entangler leaves
    /// cos(t0/2)|00> + sin(t0/2)|11>, then each qubit rotates through its
    /// own RY, with RY(t)|1> = -sin(t/2)|0> + cos(t/2)|1>.
    fn schmidt_state(t: &[f64]) -> [f64; 4] {
        let (c0, s0) = ((t[0] / 2.0).cos(), (t[0] / 2.0).sin());
        let v = [(t[1] / 2.0).cos(), (t[1] / 2.0).sin()];
        let w = [(t[2] / 2.0).cos(), (t[2] / 2.0).sin()];
        [
            c0 * v[0] * w[0] + s0 * v[1] * w[1],
            c0 * v[0] * w[1] - s0 * v[1] * w[0],
            c0 * v[1] * w[0] - s0 * v[0] * w[1],
            c0 * v[1] * w[1] + s0 * v[0] * w[0],
        ]
    }

    #[test]
    fn ansatz_matches_schmidt_form() {
        for t in [
            [0.0, 0.0, 0.0],
            [0.5, 0.5, 0.5],
            [1.9, -0.7, 2.4],
            [-2.2, 3.8, 0.1],
        ] {
            let s = ansatz_state(&t);
            let want = schmidt_state(&t);
            for k in 0..4 {
                assert_relative_eq!(s.amplitudes()[k].re, want[k], epsilon = 1e-13);
                assert!(s.amplitudes()[k].im.abs() < 1e-15, "real-amplitude ansatz");
            }
        }
    }

    #[test]
    fn overlap_circuit_population() {
        let a = [0.4, 1.2, -0.3];
        let b = [1.7, 0.2, 0.9];
        let ov = ansatz_state(&b).inner(&ansatz_state(&a));
        let p00 = overlap_circuit(&a, &b).run().unwrap().probabilities()[0];
        assert_relative_eq!(p00, ov.norm_sqr(), epsilon = 1e-13);
        // identical angles: unit population
        let p11 = overlap_circuit(&a, &a).run().unwrap().probabilities()[0];
        assert_relative_eq!(p11, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn inverted_circuit_undoes() {
        let c = ansatz_circuit(&[0.8, -1.1, 2.3]);
        let round = c.then(&c.inverted()).run().unwrap();
        assert_relative_eq!(round.probabilities()[0], 1.0, epsilon = 1e-13);
    }

    #[test]
    fn controlled_promotion_acts_only_on_set_control() {
        let theta = [0.9, 0.3, -1.4];
        let promoted = ansatz_circuit(&theta).shifted(1, 3).controlled(0);
        // control clear: nothing happens
        let idle = promoted.run().unwrap();
        assert_relative_eq!(idle.probabilities()[0], 1.0, epsilon = 1e-13);
        // control set: ansatz state appears on the target pair
        let mut c = Circuit::new(3);
        c.push(Gate::X { q: 0 });
        let engaged = c.then(&promoted).run().unwrap();
        let target = ansatz_state(&theta);
        for k in 0..4usize {
            let got = engaged.amplitudes()[4 + k];
            assert_relative_eq!(got.re, target.amplitudes()[k].re, epsilon = 1e-13);
        }
    }

    #[test]
    fn trajectory_without_noise_is_exact() {
        let c = ansatz_circuit(&[0.5, 0.5, 0.5]);
        let mut rng = rng::stream_rng(1, "t");
        let a = c.run_trajectory(&NoiseModel::none(), &mut rng).unwrap();
        let b = c.run().unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
    }

    #[test]
    fn trajectory_depolarizing_changes_some_shots() {
        let c = ansatz_circuit(&[0.5, 0.5, 0.5]);
        let noise = NoiseModel { depol_2q: 0.5, ..NoiseModel::none() };
        let clean: Vec<Complex64> = c.run().unwrap().amplitudes().to_vec();
        let mut rng = rng::stream_rng(2, "t");
        let mut differ = 0;
        for _ in 0..50 {
            let s = c.run_trajectory(&noise, &mut rng).unwrap();
            if s.amplitudes().iter().zip(&clean).any(|(x, y)| (x - y).norm() > 1e-9) {
                differ += 1;
            }
        }
        assert!(differ > 10, "{differ}");
    }
}
