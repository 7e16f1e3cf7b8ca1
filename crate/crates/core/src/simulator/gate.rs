//! Gate set: parametrized rotations, basis gates, Pauli-string unitaries and
//! a generic controlled() promotion. Every gate lowers to a small dense
//! matrix over its support qubits; the first support qubit is the most
//! significant bit of the local block index.

use crate::pauliops::{pauli_matrix, PauliString};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Ry { q: usize, theta: f64 },
    Rx { q: usize, theta: f64 },
    H { q: usize },
    X { q: usize },
    Cnot { control: usize, target: usize },
    CSwap { control: usize, a: usize, b: usize },
    /// Unitary action of a Pauli string on its non-identity support.
    Pauli { string: PauliString },
    Controlled { control: usize, gate: Box<Gate> },
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Gate {
    /// Support qubits in block order (most significant first).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Ry { q, .. } | Gate::Rx { q, .. } | Gate::H { q } | Gate::X { q } => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::CSwap { control, a, b } => vec![*control, *a, *b],
            Gate::Pauli { string } => string
                .0
                .iter()
                .enumerate()
                .filter(|(_, &ax)| ax != crate::pauliops::PauliAxis::I)
                .map(|(q, _)| q)
                .collect(),
            Gate::Controlled { control, gate } => {
                let mut qs = vec![*control];
                qs.extend(gate.qubits());
                qs
            }
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Ry { q, theta } => Gate::Ry { q: *q, theta: -theta },
            Gate::Rx { q, theta } => Gate::Rx { q: *q, theta: -theta },
            // H, X, CNOT, CSWAP and Pauli strings are involutions
            Gate::H { .. } | Gate::X { .. } | Gate::Cnot { .. } | Gate::CSwap { .. } | Gate::Pauli { .. } => {
                self.clone()
            }
            Gate::Controlled { control, gate } => Gate::Controlled {
                control: *control,
                gate: Box::new(gate.inverse()),
            },
        }
    }

    pub fn controlled(self, control: usize) -> Gate {
        Gate::Controlled {
            control,
            gate: Box::new(self),
        }
    }

    pub fn map_qubits(&self, f: &impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::Ry { q, theta } => Gate::Ry { q: f(*q), theta: *theta },
            Gate::Rx { q, theta } => Gate::Rx { q: f(*q), theta: *theta },
            Gate::H { q } => Gate::H { q: f(*q) },
            Gate::X { q } => Gate::X { q: f(*q) },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(*control),
                target: f(*target),
            },
            Gate::CSwap { control, a, b } => Gate::CSwap {
                control: f(*control),
                a: f(*a),
                b: f(*b),
            },
            Gate::Pauli { .. } => panic!("pauli gates are bound to absolute qubits"),
            Gate::Controlled { control, gate } => Gate::Controlled {
                control: f(*control),
                gate: Box::new(gate.map_qubits(f)),
            },
        }
    }

    /// Dense row-major matrix over `self.qubits()`.
    pub fn dense(&self) -> Vec<Complex64> {
        match self {
            Gate::Ry { theta, .. } => {
                let (s, co) = (theta / 2.0).sin_cos();
                vec![c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]
            }
            Gate::Rx { theta, .. } => {
                let (s, co) = (theta / 2.0).sin_cos();
                vec![c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]
            }
            Gate::H { .. } => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                vec![c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)]
            }
            Gate::X { .. } => vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            Gate::Cnot { .. } => {
                // control is the local high bit: |10> <-> |11>
                let mut m = vec![Complex64::default(); 16];
                for (i, j) in [(0usize, 0usize), (1, 1), (2, 3), (3, 2)] {
                    m[i * 4 + j] = c(1.0, 0.0);
                }
                m
            }
            Gate::CSwap { .. } => {
                // control high bit set: swap the two low bits (|101> <-> |110>)
                let mut m = vec![Complex64::default(); 64];
                for i in 0..8usize {
                    let j = if i & 0b100 != 0 {
                        (i & 0b100) | ((i & 1) << 1) | ((i >> 1) & 1)
                    } else {
                        i
                    };
                    m[i * 8 + j] = c(1.0, 0.0);
                }
                m
            }
            Gate::Pauli { string } => {
                let support: Vec<_> = string
                    .0
                    .iter()
                    .filter(|&&ax| ax != crate::pauliops::PauliAxis::I)
                    .copied()
                    .collect();
                let local = PauliString(if support.is_empty() {
                    vec![crate::pauliops::PauliAxis::I]
                } else {
                    support
                });
                pauli_matrix(&local)
            }
            Gate::Controlled { gate, .. } => {
                let inner = gate.dense();
                let k = gate.qubits().len();
                let half = 1usize << k;
                let dim = half * 2;
                let mut m = vec![Complex64::default(); dim * dim];
                for i in 0..half {
                    m[i * dim + i] = c(1.0, 0.0);
                    for j in 0..half {
                        m[(half + i) * dim + (half + j)] = inner[i * half + j];
                    }
                }
                m
            }
        }
    }
}
