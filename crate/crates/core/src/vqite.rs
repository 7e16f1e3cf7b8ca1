//! McLachlan variational imaginary-time evolution over the two-qubit ansatz.
//!
//! Each step solves (A + eps*I) theta_dot = C where A is the quantum-geometric
//! metric of the ansatz and C = -grad(E)/2, then takes an Euler step. Excited
//! states come from deflation: previously converged states are penalized with
//! a projector term alpha * |<psi(theta_k)|psi(theta)>|^2 added to the energy.
//! Every quantity is obtained from circuit populations and parameter-shift
//! rules, so the same code path runs exactly or from finite measurement shots.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::linalg::{solve_regularized, Mat};
use crate::mitigation::Calibration;
use crate::pauliops::PauliSum;
use crate::simulator::{
    ansatz_circuit, expval_sampled, measure_p00, overlap_circuit, NoiseModel,
};

pub const N_PARAMS: usize = 3;
pub type Theta = [f64; N_PARAMS];

/// How expectation values and populations are evaluated.
#[derive(Debug, Clone)]
pub enum EvalMode {
    /// Noise-free statevector arithmetic.
    Exact,
    /// Finite measurement shots, optionally noisy and readout-corrected.
    Sampled {
        shots: u64,
        noise: NoiseModel,
        calibration: Option<Calibration>,
    },
}

impl EvalMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, EvalMode::Exact)
    }

    pub fn sampled(shots: u64, noise: NoiseModel) -> Self {
        EvalMode::Sampled { shots, noise, calibration: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolutionConfig {
    /// Imaginary-time step.
    pub dtau: f64,
    pub theta_init: Theta,
    pub max_steps: usize,
    /// Stop once the penalized energy moved less than this across
    /// `stop_window` steps. Only applied in exact mode; sampled runs always
    /// use the full step budget.
    pub stop_tol: f64,
    pub stop_window: usize,
    /// Weight of the deflation projectors.
    pub penalty_alpha: f64,
    /// Tikhonov shift regularizing the metric solve.
    pub epsilon: f64,
}

impl EvolutionConfig {
    pub fn exact() -> Self {
        EvolutionConfig {
            dtau: 0.02,
            theta_init: [0.5; N_PARAMS],
            max_steps: 300,
            stop_tol: 1e-4,
            stop_window: 10,
            penalty_alpha: 20.0,
            epsilon: 1e-6,
        }
    }

    pub fn sampled() -> Self {
        EvolutionConfig { epsilon: 1e-3, ..EvolutionConfig::exact() }
    }

    pub fn for_mode(mode: &EvalMode) -> Self {
        match mode {
            EvalMode::Exact => EvolutionConfig::exact(),
            EvalMode::Sampled { .. } => EvolutionConfig::sampled(),
        }
    }
}

fn shifted(theta: &Theta, k: usize, delta: f64) -> Theta {
    let mut t = *theta;
    t[k] += delta;
    t
}

/// Population of |00> after preparing the ket and un-preparing the bra,
/// i.e. the squared overlap of the two ansatz states.
pub fn overlap_population(
    theta_ket: &Theta,
    theta_bra: &Theta,
    mode: &EvalMode,
    rng: &mut impl Rng,
) -> Result<f64> {
    let circuit = overlap_circuit(theta_ket, theta_bra);
    match mode {
        EvalMode::Exact => Ok(circuit.run()?.probabilities()[0]),
        EvalMode::Sampled { shots, noise, calibration } => {
            measure_p00(&circuit, *shots, noise, rng, calibration.as_ref())
        }
    }
}

/// Expectation value of the observable in the ansatz state.
pub fn ansatz_energy(
    observable: &PauliSum,
    theta: &Theta,
    mode: &EvalMode,
    rng: &mut impl Rng,
) -> Result<f64> {
    let prep = ansatz_circuit(theta);
    match mode {
        EvalMode::Exact => Ok(observable.expval_real(prep.run()?.amplitudes())),
        EvalMode::Sampled { shots, noise, calibration } => {
            expval_sampled(&prep, observable, *shots, noise, rng, calibration.as_ref())
                .map(|(value, _)| value)
        }
    }
}

/// Energy plus the deflation penalty alpha * sum_k |<psi_k|psi(theta)>|^2.
pub fn penalized_energy(
    observable: &PauliSum,
    deflation: &[Theta],
    alpha: f64,
    theta: &Theta,
    mode: &EvalMode,
    rng: &mut impl Rng,
) -> Result<f64> {
    let mut e = ansatz_energy(observable, theta, mode, rng)?;
    for prev in deflation {
        e += alpha * overlap_population(theta, prev, mode, rng)?;
    }
    Ok(e)
}

/// Parameter-shift gradient of the penalized energy. Every parameter feeds a
/// single rotation gate, so [E(+pi/2) - E(-pi/2)] / 2 is the exact partial
/// derivative (sampled modes estimate it from the same two evaluations).
pub fn energy_gradient(
    observable: &PauliSum,
    deflation: &[Theta],
    alpha: f64,
    theta: &Theta,
    mode: &EvalMode,
    rng: &mut impl Rng,
) -> Result<Theta> {
    let mut grad = [0.0; N_PARAMS];
    for k in 0..N_PARAMS {
        let ep =
            penalized_energy(observable, deflation, alpha, &shifted(theta, k, FRAC_PI_2), mode, rng)?;
        let em =
            penalized_energy(observable, deflation, alpha, &shifted(theta, k, -FRAC_PI_2), mode, rng)?;
        grad[k] = (ep - em) / 2.0;
    }
    Ok(grad)
}

/// Quantum-geometric metric A_ij = Re<d_i psi | d_j psi> of the ansatz,
/// measured as -1/2 the Hessian of the self-overlap population
/// p(t) = |<psi(theta)|psi(t)>|^2 at t = theta. Off-diagonal second
/// derivatives come from the four-point +-pi/2 shift rule; diagonals from
/// the two-point +-pi rule.
pub fn metric_matrix(theta: &Theta, mode: &EvalMode, rng: &mut impl Rng) -> Result<Mat> {
    let p00 = |t: &Theta, rng: &mut _| overlap_population(t, theta, mode, rng);
    let base = p00(theta, rng)?;
    let mut a = Mat::zeros(N_PARAMS, N_PARAMS);
    for i in 0..N_PARAMS {
        let pp = p00(&shifted(theta, i, PI), rng)?;
        let pm = p00(&shifted(theta, i, -PI), rng)?;
        a[(i, i)] = -0.5 * (pp - 2.0 * base + pm) / 4.0;
        for j in (i + 1)..N_PARAMS {
            let at = |si: f64, sj: f64, rng: &mut _| {
                p00(&shifted(&shifted(theta, i, si), j, sj), rng)
            };
            let d2 = (at(FRAC_PI_2, FRAC_PI_2, rng)? - at(FRAC_PI_2, -FRAC_PI_2, rng)?
                - at(-FRAC_PI_2, FRAC_PI_2, rng)?
                + at(-FRAC_PI_2, -FRAC_PI_2, rng)?)
                / 4.0;
            a[(i, j)] = -0.5 * d2;
            a[(j, i)] = a[(i, j)];
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRow {
    pub step: usize,
    pub tau: f64,
    /// Plain expectation value of the observable.
    pub energy: f64,
    /// Energy including deflation penalties (what the stopping rule watches).
    pub penalized: f64,
    pub theta: Theta,
    /// Euclidean norm of the parameter velocity that produced this step.
    pub theta_dot_norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolutionResult {
    pub theta: Theta,
    pub energy: f64,
    pub penalized: f64,
    pub steps: usize,
    pub converged: bool,
    pub trace: Vec<TraceRow>,
}

/// Evolve one state in imaginary time under the (possibly deflated)
/// observable. `converged` reports whether the exact-mode stopping rule
/// fired; sampled runs simply consume the whole step budget.
pub fn evolve(
    observable: &PauliSum,
    deflation: &[Theta],
    config: &EvolutionConfig,
    mode: &EvalMode,
    rng: &mut impl Rng,
) -> Result<EvolutionResult> {
    if !deflation.is_empty() {
        let bound = 2.0 * observable.offdiagonal_weight();
        if config.penalty_alpha <= bound {
            return Err(CoreError::PenaltyTooSmall { alpha: config.penalty_alpha, bound });
        }
    }
    let alpha = config.penalty_alpha;
    let mut theta = config.theta_init;
    let mut trace = Vec::with_capacity(config.max_steps + 1);
    let e0 = ansatz_energy(observable, &theta, mode, rng)?;
    let p0 = if deflation.is_empty() {
        e0
    } else {
        e0 + deflation
            .iter()
            .map(|prev| overlap_population(&theta, prev, mode, rng).map(|p| alpha * p))
            .sum::<Result<f64>>()?
    };
    trace.push(TraceRow { step: 0, tau: 0.0, energy: e0, penalized: p0, theta, theta_dot_norm: 0.0 });

    let mut converged = false;
    let mut steps = 0;
    for step in 1..=config.max_steps {
        let a = metric_matrix(&theta, mode, rng)?;
        let grad = energy_gradient(observable, deflation, alpha, &theta, mode, rng)?;
        let c: Vec<f64> = grad.iter().map(|g| -0.5 * g).collect();
        let dot = solve_regularized(&a, config.epsilon, &c)?;
        for k in 0..N_PARAMS {
            theta[k] += config.dtau * dot[k];
        }
        let theta_dot_norm = dot.iter().map(|d| d * d).sum::<f64>().sqrt();
        let energy = ansatz_energy(observable, &theta, mode, rng)?;
        let mut penalized = energy;
        for prev in deflation {
            penalized += alpha * overlap_population(&theta, prev, mode, rng)?;
        }
        trace.push(TraceRow {
            step,
            tau: step as f64 * config.dtau,
            energy,
            penalized,
            theta,
            theta_dot_norm,
        });
        steps = step;
        if mode.is_exact() && step >= config.stop_window {
            let before = trace[step - config.stop_window].penalized;
            if (penalized - before).abs() < config.stop_tol {
                converged = true;
                break;
            }
        }
    }
    if !mode.is_exact() {
        converged = true;
    }
    let last = trace.last().expect("trace has the initial row");
    Ok(EvolutionResult {
        theta,
        energy: last.energy,
        penalized: last.penalized,
        steps,
        converged,
        trace,
    })
}

/// Lowest `n_states` eigenstates by sequential deflation: each converged
/// parameter vector joins the penalty list for the next run.
pub fn spectrum(
    observable: &PauliSum,
    n_states: usize,
    config: &EvolutionConfig,
    mode: &EvalMode,
    rng: &mut impl Rng,
) -> Result<Vec<EvolutionResult>> {
    let mut deflation: Vec<Theta> = Vec::new();
    let mut results = Vec::with_capacity(n_states);
    for _ in 0..n_states {
        let r = evolve(observable, &deflation, config, mode, rng)?;
        deflation.push(r.theta);
        results.push(r);
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jacobi_eigh;
    use crate::params::Channel;
    use crate::quarkmodel::literals::{hamiltonian_literal, LiteralVariant};
    use crate::simulator::{ansatz_state, stream_rng};
    use approx::assert_relative_eq;
    use rand::Rng;

    fn test_sum(channel: Channel) -> PauliSum {
        let h = hamiltonian_literal(channel, LiteralVariant::SelfConsistent);
        PauliSum::decompose(&h, 1e-12).unwrap()
    }

    /// d(psi)/d(theta_k) for the ansatz: half the state at theta + pi e_k.
    fn jacobian_column(theta: &Theta, k: usize) -> Vec<f64> {
        ansatz_state(&shifted(theta, k, PI))
            .amplitudes()
            .iter()
            .map(|a| a.re / 2.0)
            .collect()
    }

    #[test]
    fn metric_matches_state_jacobian() {
        let mut rng = stream_rng(31, "metric");
        let mode = EvalMode::Exact;
        for _ in 0..20 {
            let theta: Theta = [
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ];
            let a = metric_matrix(&theta, &mode, &mut rng).unwrap();
            for i in 0..N_PARAMS {
                let ji = jacobian_column(&theta, i);
                for j in 0..N_PARAMS {
                    let jj = jacobian_column(&theta, j);
                    let dot: f64 = ji.iter().zip(&jj).map(|(x, y)| x * y).sum();
                    assert_relative_eq!(a[(i, j)], dot, epsilon = 1e-12);
                }
            }
            // rotation generators give a constant 1/4 diagonal
            for i in 0..N_PARAMS {
                assert_relative_eq!(a[(i, i)], 0.25, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let sum = test_sum(Channel::OneS0);
        let deflation = [[0.3, -0.2, 1.0]];
        let mode = EvalMode::Exact;
        let mut rng = stream_rng(32, "grad");
        let h = 1e-6;
        for _ in 0..20 {
            let theta: Theta = [
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ];
            let grad =
                energy_gradient(&sum, &deflation, 20.0, &theta, &mode, &mut rng).unwrap();
            for k in 0..N_PARAMS {
                let ep = penalized_energy(&sum, &deflation, 20.0, &shifted(&theta, k, h), &mode, &mut rng)
                    .unwrap();
                let em = penalized_energy(&sum, &deflation, 20.0, &shifted(&theta, k, -h), &mode, &mut rng)
                    .unwrap();
                let fd = (ep - em) / (2.0 * h);
                assert!((grad[k] - fd).abs() < 1e-6, "{} vs {}", grad[k], fd);
            }
        }
    }

    #[test]
    fn ground_state_converges_to_lowest_eigenvalue() {
        let h = hamiltonian_literal(Channel::OneS0, LiteralVariant::SelfConsistent);
        let (eigs, _) = jacobi_eigh(&h).unwrap();
        let sum = PauliSum::decompose(&h, 1e-12).unwrap();
        let mut rng = stream_rng(33, "ground");
        let r = evolve(&sum, &[], &EvolutionConfig::exact(), &EvalMode::Exact, &mut rng).unwrap();
        assert!(r.converged);
        assert!(r.steps < 300);
        assert!((r.energy - eigs[0]).abs() < 1e-3, "{} vs {}", r.energy, eigs[0]);
    }

    #[test]
    fn deflated_spectrum_recovers_all_eigenvalues() {
        let h = hamiltonian_literal(Channel::ThreeS1, LiteralVariant::SelfConsistent);
        let (eigs, _) = jacobi_eigh(&h).unwrap();
        let sum = PauliSum::decompose(&h, 1e-12).unwrap();
        let mut rng = stream_rng(34, "spectrum");
        let states =
            spectrum(&sum, 4, &EvolutionConfig::exact(), &EvalMode::Exact, &mut rng).unwrap();
        for (r, &e) in states.iter().zip(&eigs) {
            assert!(r.converged);
            assert!((r.energy - e).abs() < 5e-3, "{} vs {}", r.energy, e);
        }
    }

    #[test]
    fn weak_penalty_is_rejected() {
        let sum = test_sum(Channel::OneS0);
        let mut rng = stream_rng(35, "penalty");
        let config = EvolutionConfig { penalty_alpha: 1.0, ..EvolutionConfig::exact() };
        let r = evolve(&sum, &[[0.0; 3]], &config, &EvalMode::Exact, &mut rng);
        assert!(matches!(r, Err(CoreError::PenaltyTooSmall { .. })));
    }

    #[test]
    fn sampled_evolution_is_deterministic_per_stream() {
        let sum = test_sum(Channel::OneS0);
        let config = EvolutionConfig { max_steps: 5, ..EvolutionConfig::sampled() };
        let mode = EvalMode::sampled(400, NoiseModel::none());
        let a = evolve(&sum, &[], &config, &mode, &mut stream_rng(36, "t/0")).unwrap();
        let b = evolve(&sum, &[], &config, &mode, &mut stream_rng(36, "t/0")).unwrap();
        let c = evolve(&sum, &[], &config, &mode, &mut stream_rng(36, "t/1")).unwrap();
        assert_eq!(a.theta, b.theta);
        assert_ne!(a.theta, c.theta);
        assert!(a.converged, "sampled runs complete their budget");
        assert_eq!(a.steps, 5);
    }

    #[test]
    fn trace_records_every_step() {
        let sum = test_sum(Channel::OneS0);
        let config = EvolutionConfig { max_steps: 7, stop_tol: 0.0, ..EvolutionConfig::exact() };
        let mut rng = stream_rng(37, "trace");
        let r = evolve(&sum, &[], &config, &EvalMode::Exact, &mut rng).unwrap();
        assert_eq!(r.trace.len(), 8);
        assert_eq!(r.trace[0].step, 0);
        assert_relative_eq!(r.trace[3].tau, 0.06, epsilon = 1e-12);
        assert!(!r.converged);
        // energy decreases monotonically from the default start for this system
        for w in r.trace.windows(2) {
            assert!(w[1].energy < w[0].energy + 1e-9);
        }
    }
}
