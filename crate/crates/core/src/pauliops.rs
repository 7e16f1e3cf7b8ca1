//! Tensor-product (Pauli-string) decomposition of small matrices and exact
//! expectation values. Qubit 0 is the most significant bit of a basis index.

use crate::error::{CoreError, Result};
use crate::linalg::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    fn from_char(c: char) -> Option<PauliAxis> {
        match c {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }

    fn to_char(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }
}

/// One Pauli string; element k acts on qubit k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(pub Vec<PauliAxis>);

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        PauliString(vec![PauliAxis::I; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == PauliAxis::I)
    }

    pub fn label(&self) -> String {
        self.0.iter().map(|a| a.to_char()).collect()
    }

    pub fn from_label(label: &str, n_qubits: usize) -> Result<Self> {
        let axes: Option<Vec<PauliAxis>> = label.chars().map(PauliAxis::from_char).collect();
        match axes {
            Some(v) if v.len() == n_qubits => Ok(PauliString(v)),
            _ => Err(CoreError::BadPauliLabel(label.to_string(), n_qubits)),
        }
    }

    /// Every string over n qubits in lexicographic (I, X, Y, Z) order.
    pub fn enumerate(n_qubits: usize) -> Vec<PauliString> {
        let mut out = Vec::with_capacity(4usize.pow(n_qubits as u32));
        let axes = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
        for code in 0..4usize.pow(n_qubits as u32) {
            let mut s = Vec::with_capacity(n_qubits);
            let mut c = code;
            for _ in 0..n_qubits {
                s.push(axes[c % 4]);
                c /= 4;
            }
            s.reverse(); // qubit 0 varies slowest
            out.push(PauliString(s));
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Apply the string as a unitary to a statevector of length 2^n.
pub fn apply_pauli_string(string: &PauliString, amps: &mut [Complex64]) {
    let n = string.n_qubits();
    assert_eq!(amps.len(), 1 << n);
    for (q, &axis) in string.0.iter().enumerate() {
        if axis == PauliAxis::I {
            continue;
        }
        let mask = 1usize << (n - 1 - q);
        match axis {
            PauliAxis::X => {
                for idx in 0..amps.len() {
                    if idx & mask == 0 {
                        amps.swap(idx, idx | mask);
                    }
                }
            }
            PauliAxis::Y => {
                let i = Complex64::new(0.0, 1.0);
                for idx in 0..amps.len() {
                    if idx & mask == 0 {
                        let lo = amps[idx];
                        let hi = amps[idx | mask];
                        // Y|0> = i|1>, Y|1> = -i|0>
                        amps[idx] = -i * hi;
                        amps[idx | mask] = i * lo;
                    }
                }
            }
            PauliAxis::Z => {
                for (idx, a) in amps.iter_mut().enumerate() {
                    if idx & mask != 0 {
                        *a = -*a;
                    }
                }
            }
            PauliAxis::I => unreachable!(),
        }
    }
}

/// Dense matrix of the string (row-major, 2^n x 2^n).
pub fn pauli_matrix(string: &PauliString) -> Vec<Complex64> {
    let dim = 1 << string.n_qubits();
    let mut cols = vec![Complex64::default(); dim * dim];
    for j in 0..dim {
        let mut basis = vec![Complex64::default(); dim];
        basis[j] = Complex64::new(1.0, 0.0);
        apply_pauli_string(string, &mut basis);
        for i in 0..dim {
            cols[i * dim + j] = basis[i];
        }
    }
    cols
}

#[derive(Debug, Clone)]
pub struct PauliTerm {
    pub string: PauliString,
    pub coeff: Complex64,
}

/// Linear combination of Pauli strings.
#[derive(Debug, Clone)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    label: String,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct SumJson {
    n_qubits: usize,
    terms: Vec<TermJson>,
}

impl PauliSum {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Self {
        assert!(terms.iter().all(|t| t.string.n_qubits() == n_qubits));
        PauliSum { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn coeff(&self, label: &str) -> Option<Complex64> {
        self.terms
            .iter()
            .find(|t| t.string.label() == label)
            .map(|t| t.coeff)
    }

    /// Sum of |coeff| over non-identity terms: a Gershgorin-style bound on
    /// the spectral spread away from the identity offset.
    pub fn offdiagonal_weight(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| !t.string.is_identity())
            .map(|t| t.coeff.norm())
            .sum()
    }

    /// Expand a square matrix (dimension 2^n) in Pauli strings:
    /// c_P = Tr(P M) / 2^n. Terms below `drop_tol` in magnitude are omitted.
    /// Hermitian input yields real coefficients; general real input may pick
    /// up imaginary parts on Y-odd strings.
    pub fn decompose(m: &Mat, drop_tol: f64) -> Result<PauliSum> {
        if !m.is_square() {
            return Err(CoreError::BadMatrixShape("square", m.n_rows(), m.n_cols()));
        }
        let dim = m.n_rows();
        if !dim.is_power_of_two() {
            return Err(CoreError::BadMatrixShape("power-of-two square", dim, dim));
        }
        let n = dim.trailing_zeros() as usize;
        let mut terms = Vec::new();
        for string in PauliString::enumerate(n) {
            let p = pauli_matrix(&string);
            // Tr(P M) = sum_ij P[i][j] M[j][i]
            let mut tr = Complex64::default();
            for i in 0..dim {
                for j in 0..dim {
                    tr += p[i * dim + j] * m[(j, i)];
                }
            }
            let coeff = tr / dim as f64;
            if coeff.norm() > drop_tol {
                terms.push(PauliTerm { string, coeff });
            }
        }
        Ok(PauliSum { n_qubits: n, terms })
    }

    /// Rebuild the dense complex matrix sum_k c_k P_k.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let dim = 1 << self.n_qubits;
        let mut out = vec![Complex64::default(); dim * dim];
        for term in &self.terms {
            let p = pauli_matrix(&term.string);
            for (o, v) in out.iter_mut().zip(p) {
                *o += term.coeff * v;
            }
        }
        out
    }

    /// Rebuild as a real matrix; panics in debug if a material imaginary
    /// residue survives (only meaningful for sums from real matrices).
    pub fn reconstruct_real(&self) -> Mat {
        let dim = 1 << self.n_qubits;
        let dense = self.reconstruct();
        let mut m = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = dense[i * dim + j];
                debug_assert!(v.im.abs() < 1e-9, "imaginary residue {v}");
                m[(i, j)] = v.re;
            }
        }
        m
    }

    /// <psi| sum |psi> for a statevector of length 2^n.
    pub fn expval(&self, amps: &[Complex64]) -> Complex64 {
        assert_eq!(amps.len(), 1 << self.n_qubits);
        let mut total = Complex64::default();
        for term in &self.terms {
            let mut moved = amps.to_vec();
            apply_pauli_string(&term.string, &mut moved);
            let mut inner = Complex64::default();
            for (a, b) in amps.iter().zip(&moved) {
                inner += a.conj() * b;
            }
            total += term.coeff * inner;
        }
        total
    }

    /// Real part of the expectation, the observable value for Hermitian sums.
    pub fn expval_real(&self, amps: &[Complex64]) -> f64 {
        self.expval(amps).re
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SumJson {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    label: t.string.label(),
                    re: t.coeff.re,
                    im: t.coeff.im,
                })
                .collect(),
        })
        .expect("pauli serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PauliSum> {
        let sj: SumJson = serde_json::from_value(v.clone())?;
        let terms = sj
            .terms
            .into_iter()
            .map(|t| {
                Ok(PauliTerm {
                    string: PauliString::from_label(&t.label, sj.n_qubits)?,
                    coeff: Complex64::new(t.re, t.im),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliSum::new(sj.n_qubits, terms))
    }
}
