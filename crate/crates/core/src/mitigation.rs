//! Measurement-error mitigation and zero-noise extrapolation.

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::linalg::{solve_general, Mat};
use crate::simulator::sampling::{probs_from_counts, sample_counts};
use crate::simulator::{Circuit, Gate, NoiseModel};

/// Empirical readout confusion matrix. Column `t` holds the measured outcome
/// distribution when basis state `t` was prepared.
#[derive(Debug, Clone)]
pub struct Calibration {
    n_qubits: usize,
    shots: u64,
    matrix: Mat,
}

#[derive(Serialize, Deserialize)]
struct CalibrationJson {
    n_qubits: usize,
    shots: u64,
    matrix_row_major: Vec<f64>,
}

impl Calibration {
    /// Build directly from a known confusion matrix (columns must sum to
    /// one). `shots` records how many shots per basis state produced it;
    /// zero marks an analytic matrix.
    pub fn from_matrix(n_qubits: usize, matrix: Mat, shots: u64) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.n_rows() != dim || matrix.n_cols() != dim {
            return Err(CoreError::BadMatrixShape(
                "a 2^n x 2^n confusion matrix",
                matrix.n_rows(),
                matrix.n_cols(),
            ));
        }
        for j in 0..dim {
            let col: f64 = (0..dim).map(|i| matrix[(i, j)]).sum();
            if (col - 1.0).abs() > 1e-9 {
                return Err(CoreError::BadMatrixShape("column-stochastic", dim, j));
            }
        }
        Ok(Calibration { n_qubits, shots, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// Invert the confusion map on observed outcome frequencies, then clip
    /// negative entries and renormalize so the result is a distribution.
    pub fn mitigate_probs(&self, observed: &[f64]) -> Result<Vec<f64>> {
        let raw = solve_general(&self.matrix, observed).ok_or(CoreError::SingularCalibration)?;
        Ok(clip_to_distribution(&raw))
    }

    pub fn mitigate_counts(&self, counts: &[u64]) -> Result<Vec<f64>> {
        self.mitigate_probs(&probs_from_counts(counts))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(CalibrationJson {
            n_qubits: self.n_qubits,
            shots: self.shots,
            matrix_row_major: self.matrix.data().to_vec(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: CalibrationJson = serde_json::from_value(v.clone())?;
        let dim = 1usize << parsed.n_qubits;
        if parsed.matrix_row_major.len() != dim * dim {
            return Err(CoreError::BadMatrixShape(
                "a 2^n x 2^n confusion matrix",
                parsed.matrix_row_major.len(),
                dim,
            ));
        }
        Calibration::from_matrix(
            parsed.n_qubits,
            Mat::from_vec(dim, dim, parsed.matrix_row_major),
            parsed.shots,
        )
    }
}

fn clip_to_distribution(raw: &[f64]) -> Vec<f64> {
    let clipped: Vec<f64> = raw.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if total <= 0.0 {
        return vec![1.0 / raw.len() as f64; raw.len()];
    }
    clipped.into_iter().map(|x| x / total).collect()
}

/// Measure the confusion matrix by preparing every computational basis state
/// (X gates on the set bits) and sampling it under the given noise model.
pub fn calibrate(
    n_qubits: usize,
    noise: &NoiseModel,
    shots: u64,
    rng: &mut impl Rng,
) -> Result<Calibration> {
    let dim = 1usize << n_qubits;
    let mut matrix = Mat::zeros(dim, dim);
    for truth in 0..dim {
        let mut prep = Circuit::new(n_qubits);
        for q in 0..n_qubits {
            if truth & (1 << (n_qubits - 1 - q)) != 0 {
                prep.push(Gate::X { q });
            }
        }
        let counts = sample_counts(&prep, shots, noise, rng)?;
        for (outcome, &c) in counts.iter().enumerate() {
            matrix[(outcome, truth)] = c as f64 / shots as f64;
        }
    }
    Calibration::from_matrix(n_qubits, matrix, shots)
}

/// Global unitary folding: replace the circuit U by U (U^-1 U)^k so the
/// logical action is unchanged while the gate count grows by the odd factor
/// `scale` = 2k + 1.
pub fn fold_circuit(circuit: &Circuit, scale: u32) -> Result<Circuit> {
    if scale == 0 || scale % 2 == 0 {
        return Err(CoreError::BadFoldScale(scale));
    }
    let block = circuit.inverted().then(circuit);
    let mut folded = circuit.clone();
    for _ in 0..(scale - 1) / 2 {
        folded = folded.then(&block);
    }
    Ok(folded)
}

/// Scales, fit orders, and repetition counts for a zero-noise
/// extrapolation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoldingPlan {
    pub scales: Vec<u32>,
    pub orders: Vec<usize>,
    pub trials: usize,
    pub bootstrap: usize,
}

impl Default for FoldingPlan {
    fn default() -> Self {
        FoldingPlan { scales: vec![1, 3, 5, 7], orders: vec![1, 2], trials: 10, bootstrap: 200 }
    }
}

impl FoldingPlan {
    pub fn validate(&self) -> Result<()> {
        if self.scales.is_empty() || self.scales[0] != 1 {
            return Err(CoreError::BadFoldScale(*self.scales.first().unwrap_or(&0)));
        }
        for pair in self.scales.windows(2) {
            if pair[1] <= pair[0] {
                return Err(CoreError::BadFoldScale(pair[1]));
            }
        }
        if let Some(&bad) = self.scales.iter().find(|s| **s % 2 == 0) {
            return Err(CoreError::BadFoldScale(bad));
        }
        let max_order = self.orders.iter().copied().max().unwrap_or(0);
        if self.scales.len() < max_order + 1 {
            return Err(CoreError::NotEnoughScales {
                need: max_order + 1,
                got: self.scales.len(),
            });
        }
        Ok(())
    }
}

/// Repeated estimates of one observable at a fixed noise-folding scale.
#[derive(Debug, Clone, Serialize)]
pub struct ScaleSeries {
    pub scale: u32,
    pub shots: u64,
    pub per_trial: Vec<f64>,
}

impl ScaleSeries {
    pub fn mean(&self) -> f64 {
        self.per_trial.iter().sum::<f64>() / self.per_trial.len() as f64
    }

    /// Standard error of the trial mean.
    pub fn stderr(&self) -> f64 {
        if self.per_trial.len() < 2 {
            return 0.0;
        }
        std_dev(&self.per_trial) / (self.per_trial.len() as f64).sqrt()
    }
}

/// One extrapolating fit of the scale-dependent means.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub order: usize,
    pub value: f64,
    pub bootstrap_std: f64,
    /// Whether the extrapolated value stayed inside the observable's
    /// physical range (always true for unbounded observables).
    pub physical: bool,
}

/// Zero-noise extrapolation summary across fit orders.
#[derive(Debug, Clone, Serialize)]
pub struct ZneEstimate {
    pub scales: Vec<u32>,
    pub means: Vec<f64>,
    pub stderrs: Vec<f64>,
    pub fits: Vec<FitResult>,
}

/// Least-squares polynomial fit of `values` against `scales`, evaluated at
/// scale zero. Solved through the normal equations, which are well behaved
/// for the handful of small scale factors used here.
pub fn extrapolate_to_zero(scales: &[f64], values: &[f64], order: usize) -> Result<f64> {
    assert_eq!(scales.len(), values.len());
    let mut distinct: Vec<f64> = scales.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < order + 1 {
        return Err(CoreError::NotEnoughScales { need: order + 1, got: distinct.len() });
    }
    let m = order + 1;
    let mut xtx = Mat::zeros(m, m);
    let mut xty = vec![0.0; m];
    for (&s, &v) in scales.iter().zip(values) {
        let mut pows = vec![1.0; m];
        for k in 1..m {
            pows[k] = pows[k - 1] * s;
        }
        for i in 0..m {
            xty[i] += pows[i] * v;
            for j in 0..m {
                xtx[(i, j)] += pows[i] * pows[j];
            }
        }
    }
    let coeffs = solve_general(&xtx, &xty).ok_or(CoreError::NotEnoughScales {
        need: order + 1,
        got: distinct.len(),
    })?;
    Ok(coeffs[0])
}

/// Extrapolate a scale series to zero noise.
///
/// For each requested polynomial order the per-scale trial means are fit
/// and evaluated at scale zero. Uncertainty comes from a parametric
/// bootstrap at the shot level: every trial estimate is resampled as a
/// binomial success frequency, the fit repeated, and the standard deviation
/// over `bootstrap` rounds reported. With `unit_interval` set, extrapolated
/// values outside [0, 1] are flagged unphysical (the raw number is kept).
pub fn zne(
    series: &[ScaleSeries],
    orders: &[usize],
    bootstrap: usize,
    unit_interval: bool,
    rng: &mut impl Rng,
) -> Result<ZneEstimate> {
    assert!(!series.is_empty());
    let scales: Vec<f64> = series.iter().map(|s| s.scale as f64).collect();
    let means: Vec<f64> = series.iter().map(ScaleSeries::mean).collect();
    let stderrs: Vec<f64> = series.iter().map(ScaleSeries::stderr).collect();

    let mut fits = Vec::new();
    for &order in orders {
        let value = extrapolate_to_zero(&scales, &means, order)?;
        let mut resampled = Vec::with_capacity(bootstrap);
        for _ in 0..bootstrap {
            let mut boot_means = Vec::with_capacity(series.len());
            for s in series {
                let mut acc = 0.0;
                for &p in &s.per_trial {
                    let q = p.clamp(0.0, 1.0);
                    let hits = Binomial::new(s.shots, q)
                        .expect("clamped probability")
                        .sample(rng);
                    acc += hits as f64 / s.shots as f64;
                }
                boot_means.push(acc / s.per_trial.len() as f64);
            }
            resampled.push(extrapolate_to_zero(&scales, &boot_means, order)?);
        }
        let physical = !unit_interval || (0.0..=1.0).contains(&value);
        fits.push(FitResult { order, value, bootstrap_std: std_dev(&resampled), physical });
    }
    Ok(ZneEstimate {
        scales: series.iter().map(|s| s.scale).collect(),
        means,
        stderrs,
        fits,
    })
}

/// Nonparametric bootstrap of the extrapolation: resample each scale's
/// trial estimates with replacement, refit, and return the standard
/// deviation of the intercept over `b` rounds.
pub fn bootstrap_std(
    per_scale: &[Vec<f64>],
    scales: &[f64],
    order: usize,
    b: usize,
    rng: &mut impl Rng,
) -> Result<f64> {
    assert_eq!(per_scale.len(), scales.len());
    assert!(b >= 50, "too few bootstrap rounds for a stable deviation");
    let mut intercepts = Vec::with_capacity(b);
    for _ in 0..b {
        let means: Vec<f64> = per_scale
            .iter()
            .map(|trials| {
                let n = trials.len();
                (0..n).map(|_| trials[rng.gen_range(0..n)]).sum::<f64>() / n as f64
            })
            .collect();
        intercepts.push(extrapolate_to_zero(scales, &means, order)?);
    }
    Ok(std_dev(&intercepts))
}

fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    var.sqrt()
}
