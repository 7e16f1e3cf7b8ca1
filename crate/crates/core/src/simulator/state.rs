//! Statevector register. Basis index bit layout matches the Pauli module:
//! qubit 0 is the most significant bit.

use crate::error::{CoreError, Result};
use crate::simulator::gate::Gate;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |00...0>
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::default(); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 1 << n_qubits);
        StateVector { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// <self|other>
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability that measuring `qubit` yields 0.
    pub fn marginal_zero(&self, qubit: usize) -> f64 {
        let mask = 1usize << (self.n_qubits - 1 - qubit);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        let qubits = gate.qubits();
        for &q in &qubits {
            if q >= self.n_qubits {
                return Err(CoreError::QubitOutOfRange(q, self.n_qubits));
            }
        }
        debug_assert!(
            qubits.iter().collect::<std::collections::HashSet<_>>().len() == qubits.len(),
            "gate addresses a qubit twice"
        );
        let mat = gate.dense();
        self.apply_dense(&qubits, &mat);
        Ok(())
    }

    /// Apply a dense 2^k unitary over `qubits` (block order: first listed
    /// qubit = most significant local bit).
    fn apply_dense(&mut self, qubits: &[usize], mat: &[Complex64]) {
        let k = qubits.len();
        let dim = 1usize << k;
        debug_assert_eq!(mat.len(), dim * dim);
        let masks: Vec<usize> = qubits.iter().map(|&q| 1usize << (self.n_qubits - 1 - q)).collect();
        let all: usize = masks.iter().sum();
        let mut gathered = vec![Complex64::default(); dim];
        for base in 0..self.amps.len() {
            if base & all != 0 {
                continue;
            }
            for (p, g) in gathered.iter_mut().enumerate() {
                let mut idx = base;
                for (j, m) in masks.iter().enumerate() {
                    if p & (1 << (k - 1 - j)) != 0 {
                        idx |= m;
                    }
                }
                *g = self.amps[idx];
            }
            for p in 0..dim {
                let mut acc = Complex64::default();
                for (q, g) in gathered.iter().enumerate() {
                    acc += mat[p * dim + q] * g;
                }
                let mut idx = base;
                for (j, m) in masks.iter().enumerate() {
                    if p & (1 << (k - 1 - j)) != 0 {
                        idx |= m;
                    }
                }
                self.amps[idx] = acc;
            }
        }
    }
}
