//! Stochastic noise model: asymmetric readout flips plus trajectory-sampled
//! depolarizing errors after each gate.

use crate::error::{CoreError, Result};
use crate::linalg::Mat;
use crate::pauliops::{PauliAxis, PauliString};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Readout confusion pair for one measured qubit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReadoutPair {
    /// P(read 1 | true 0).
    pub p10: f64,
    /// P(read 0 | true 1).
    pub p01: f64,
}

impl ReadoutPair {
    /// 2x2 confusion matrix, columns indexed by the true bit.
    pub fn confusion(&self) -> [[f64; 2]; 2] {
        [[1.0 - self.p10, self.p01], [self.p10, 1.0 - self.p01]]
    }

    fn is_zero(&self) -> bool {
        self.p10 == 0.0 && self.p01 == 0.0
    }
}

/// Readout-flip and per-gate depolarizing probabilities.
///
/// An empty `readout` list means ideal measurement; a single entry applies
/// to every measured qubit; otherwise the list gives one pair per qubit.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseModel {
    pub readout: Vec<ReadoutPair>,
    /// Depolarizing probability after each single-qubit gate.
    pub depol_1q: f64,
    /// Depolarizing probability after each multi-qubit gate.
    pub depol_2q: f64,
}

impl NoiseModel {
    pub fn none() -> Self {
        NoiseModel::default()
    }

    /// Readout flips only, at the standard strengths on every qubit.
    pub fn default_readout() -> Self {
        NoiseModel {
            readout: vec![ReadoutPair { p10: 0.02, p01: 0.03 }],
            ..NoiseModel::default()
        }
    }

    /// Gate depolarizing only, at the standard strengths.
    pub fn default_depol() -> Self {
        NoiseModel { depol_1q: 5e-4, depol_2q: 1e-2, ..NoiseModel::default() }
    }

    /// Both mechanisms at the standard strengths.
    pub fn default_full() -> Self {
        NoiseModel {
            readout: vec![ReadoutPair { p10: 0.02, p01: 0.03 }],
            depol_1q: 5e-4,
            depol_2q: 1e-2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut rates: Vec<(String, f64)> = vec![
            ("depol_1q".into(), self.depol_1q),
            ("depol_2q".into(), self.depol_2q),
        ];
        for (q, pair) in self.readout.iter().enumerate() {
            rates.push((format!("readout[{q}].p10"), pair.p10));
            rates.push((format!("readout[{q}].p01"), pair.p01));
        }
        for (name, v) in rates {
            if !v.is_finite() || !(0.0..1.0).contains(&v) {
                return Err(CoreError::BadNoiseModel(format!("{name} = {v} outside [0, 1)")));
            }
        }
        Ok(())
    }

    pub fn has_depol(&self) -> bool {
        self.depol_1q > 0.0 || self.depol_2q > 0.0
    }

    pub fn has_readout(&self) -> bool {
        self.readout.iter().any(|p| !p.is_zero())
    }

    pub fn is_noiseless(&self) -> bool {
        !self.has_depol() && !self.has_readout()
    }

    /// Depolarizing probability for a gate by support size.
    pub fn depol_prob(&self, support: usize) -> f64 {
        if support <= 1 {
            self.depol_1q
        } else {
            self.depol_2q
        }
    }

    /// One confusion pair per register qubit, broadcasting a single entry.
    pub fn readout_pairs(&self, n_qubits: usize) -> Result<Vec<ReadoutPair>> {
        match self.readout.len() {
            0 => Ok(vec![ReadoutPair::default(); n_qubits]),
            1 => Ok(vec![self.readout[0]; n_qubits]),
            n if n == n_qubits => Ok(self.readout.clone()),
            n => Err(CoreError::BadNoiseModel(format!(
                "readout list has {n} entries but the register has {n_qubits} qubits"
            ))),
        }
    }

    /// Tensor-product confusion matrix over n qubits (2^n x 2^n, columns =
    /// true outcome).
    pub fn confusion_matrix(&self, n_qubits: usize) -> Result<Mat> {
        let pairs = self.readout_pairs(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut m = Mat::zeros(dim, dim);
        for read in 0..dim {
            for truth in 0..dim {
                let mut p = 1.0;
                for (q, pair) in pairs.iter().enumerate() {
                    let shift = n_qubits - 1 - q;
                    p *= pair.confusion()[(read >> shift) & 1][(truth >> shift) & 1];
                }
                m[(read, truth)] = p;
            }
        }
        Ok(m)
    }

    /// Push an exact outcome distribution through the readout channel.
    pub fn apply_readout_to_probs(&self, probs: &[f64], n_qubits: usize) -> Result<Vec<f64>> {
        let pairs = self.readout_pairs(n_qubits)?;
        let mut p = probs.to_vec();
        for (q, pair) in pairs.iter().enumerate() {
            let a = pair.confusion();
            let mask = 1usize << (n_qubits - 1 - q);
            let mut next = vec![0.0; p.len()];
            for (idx, &v) in p.iter().enumerate() {
                let bit = (idx & mask != 0) as usize;
                next[idx & !mask] += a[0][bit] * v;
                next[idx | mask] += a[1][bit] * v;
            }
            p = next;
        }
        Ok(p)
    }
}

/// Uniformly random non-identity Pauli string over `qubits`, embedded into
/// an n-qubit register.
pub fn random_error_pauli(n_qubits: usize, qubits: &[usize], rng: &mut impl Rng) -> PauliString {
    let k = qubits.len();
    let n_choices = 4usize.pow(k as u32) - 1;
    let code = rng.gen_range(1..=n_choices);
    let axes_table = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
    let mut axes = vec![PauliAxis::I; n_qubits];
    let mut c = code;
    for &q in qubits.iter().rev() {
        axes[q] = axes_table[c % 4];
        c /= 4;
    }
    PauliString(axes)
}

/// Flip the bits of one sampled outcome through per-qubit confusion pairs
/// (as produced by [`NoiseModel::readout_pairs`]).
pub fn readout_flip(
    outcome: usize,
    pairs: &[ReadoutPair],
    rng: &mut impl Rng,
) -> usize {
    let n = pairs.len();
    let mut read = outcome;
    for (q, pair) in pairs.iter().enumerate() {
        let mask = 1usize << (n - 1 - q);
        let p_flip = if outcome & mask != 0 { pair.p01 } else { pair.p10 };
        if p_flip > 0.0 && rng.gen::<f64>() < p_flip {
            read ^= mask;
        }
    }
    read
}
