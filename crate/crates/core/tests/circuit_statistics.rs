//! Cross-module statistical checks of the sampling pipeline: estimator
//! bias, trajectory noise against a density-matrix oracle, fault-rate
//! scaling under unitary folding, and agreement between the overlap
//! protocols.

use num_complex::Complex64;
use qvqite_core::linalg::Mat;
use qvqite_core::mitigation::fold_circuit;
use qvqite_core::params::Channel;
use qvqite_core::pauliops::{pauli_matrix, PauliAxis, PauliString, PauliSum};
use qvqite_core::quarkmodel::{e1_literal, hamiltonian_literal, LiteralVariant};
use qvqite_core::simulator::sampling::{parity_expectation, probs_from_counts};
use qvqite_core::simulator::{
    ansatz_circuit, expval_sampled, sample_counts, stream_rng, Circuit, Gate, NoiseModel,
};
use qvqite_core::transitions::{
    channel_states, dipole_element_exact, direct_overlap_sampled, hadamard_test_circuit,
    overlap_squared_exact, swap_overlap_sampled, trial_stats, ChannelStates, M1_TRANSITIONS,
};
use qvqite_core::vqite::Theta;

fn literal_states(channel: Channel) -> ChannelStates {
    channel_states(&hamiltonian_literal(channel, LiteralVariant::SelfConsistent)).unwrap()
}

fn eigvec(st: &ChannelStates, level: usize) -> Vec<f64> {
    (0..st.vectors.n_rows()).map(|i| st.vectors[(i, level)]).collect()
}

#[test]
fn sampled_expectation_is_unbiased_across_streams() {
    let h = hamiltonian_literal(Channel::OneS0, LiteralVariant::SelfConsistent);
    let observable = PauliSum::decompose(&h, 1e-12).unwrap();
    let prep = ansatz_circuit(&[0.7, -0.4, 1.1]);
    let exact = observable.expval_real(prep.run().unwrap().amplitudes());

    let noise = NoiseModel::none();
    let shots = 2_000;
    let n_streams = 200;
    let mut estimates: Vec<f64> = Vec::new();
    let mut var_of_mean = 0.0;
    for i in 0..n_streams {
        let mut rng = stream_rng(101, &format!("unbiased/{i}"));
        let (v, se) =
            expval_sampled(&prep, &observable, shots, &noise, &mut rng, None).unwrap();
        estimates.push(v);
        var_of_mean += se * se;
    }
    let mean = estimates.iter().sum::<f64>() / n_streams as f64;
    let pooled_se = var_of_mean.sqrt() / n_streams as f64;
    assert!(
        (mean - exact).abs() < 5.0 * pooled_se,
        "estimator bias {} exceeds 5 pooled SE {pooled_se}",
        (mean - exact).abs()
    );
}

/// Full-register unitary of a gate on a two-qubit register (qubit 0 is the
/// most significant bit).
fn full_unitary(gate: &Gate) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    match gate {
        Gate::Cnot { .. } => gate.dense(),
        _ => {
            let local = gate.dense();
            assert_eq!(local.len(), 4, "single-qubit gate expected");
            let q = gate.qubits()[0];
            let mut m = vec![zero; 16];
            for i in 0..4usize {
                for j in 0..4usize {
                    let (hi_i, lo_i) = (i >> 1, i & 1);
                    let (hi_j, lo_j) = (j >> 1, j & 1);
                    m[i * 4 + j] = if q == 0 {
                        if lo_i == lo_j { local[hi_i * 2 + hi_j] } else { zero }
                    } else if hi_i == hi_j {
                        local[lo_i * 2 + lo_j]
                    } else {
                        zero
                    };
                }
            }
            m
        }
    }
}

fn matmul4(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i * 4 + k];
            for j in 0..4 {
                c[i * 4 + j] += aik * b[k * 4 + j];
            }
        }
    }
    c
}

fn dagger4(a: &[Complex64]) -> Vec<Complex64> {
    let mut d = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in 0..4 {
            d[i * 4 + j] = a[j * 4 + i].conj();
        }
    }
    d
}

/// Exact density-matrix evolution of a two-qubit circuit under the same
/// per-gate depolarizing channel the trajectory sampler draws from.
fn density_matrix_probs(circuit: &Circuit, noise: &NoiseModel) -> Vec<f64> {
    let mut rho = vec![Complex64::new(0.0, 0.0); 16];
    rho[0] = Complex64::new(1.0, 0.0);
    for gate in &circuit.gates {
        let u = full_unitary(gate);
        rho = matmul4(&matmul4(&u, &rho), &dagger4(&u));
        let support = gate.qubits();
        let p = noise.depol_prob(support.len());
        if p == 0.0 {
            continue;
        }
        // enumerate the non-identity Paulis on the gate's support
        let k = support.len();
        let n_choices = 4usize.pow(k as u32) - 1;
        let axes_table = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
        let mut mixed = vec![Complex64::new(0.0, 0.0); 16];
        for code in 1..=n_choices {
            let mut axes = vec![PauliAxis::I; 2];
            let mut c = code;
            for &q in support.iter().rev() {
                axes[q] = axes_table[c % 4];
                c /= 4;
            }
            let pm = pauli_matrix(&PauliString(axes));
            let term = matmul4(&matmul4(&pm, &rho), &dagger4(&pm));
            for (m, t) in mixed.iter_mut().zip(term) {
                *m += t;
            }
        }
        for (r, m) in rho.iter_mut().zip(mixed) {
            *r = *r * (1.0 - p) + m * (p / n_choices as f64);
        }
    }
    (0..4).map(|i| rho[i * 4 + i].re).collect()
}

#[test]
fn trajectory_noise_matches_density_matrix_oracle() {
    let noise = NoiseModel { readout: vec![], depol_1q: 0.01, depol_2q: 0.05 };
    // folding triples the gate count, giving the error channel real work
    let circuit = fold_circuit(&ansatz_circuit(&[0.9, -1.3, 0.4]), 3).unwrap();
    let want = density_matrix_probs(&circuit, &noise);

    let shots = 400_000u64;
    let mut rng = stream_rng(102, "dm-oracle");
    let counts = sample_counts(&circuit, shots, &noise, &mut rng).unwrap();
    let got = probs_from_counts(&counts);
    for (outcome, (&g, &w)) in got.iter().zip(&want).enumerate() {
        let sigma = (w * (1.0 - w) / shots as f64).sqrt().max(1e-6);
        assert!(
            (g - w).abs() < 5.0 * sigma,
            "outcome {outcome}: sampled {g} vs density matrix {w} (sigma {sigma})"
        );
    }
}

#[test]
fn fault_injection_rate_scales_with_folding() {
    // A chain of X gates acts as the identity, but each injected fault
    // flips the measured bit with probability 2/3 (X and Y flip, Z does
    // not), so P(read 1) = (1 - (1 - 4p/3)^gates) / 2 exactly. The log of
    // the survival probability is then proportional to the gate count,
    // which unitary folding multiplies by the scale.
    let noise = NoiseModel { readout: vec![], depol_1q: 0.01, depol_2q: 0.0 };
    let mut base = Circuit::new(1);
    for _ in 0..16 {
        base.push(Gate::X { q: 0 });
    }
    let shots = 200_000u64;
    let lambda = |scale: u32, rng_tag: &str| -> (f64, f64) {
        let folded = fold_circuit(&base, scale).unwrap();
        assert_eq!(folded.gates.len(), 16 * scale as usize);
        let mut rng = stream_rng(103, rng_tag);
        let counts = sample_counts(&folded, shots, &noise, &mut rng).unwrap();
        let p1 = counts[1] as f64 / shots as f64;
        let sigma_p = (p1 * (1.0 - p1) / shots as f64).sqrt();
        // t = -ln(1 - 2 p1) grows linearly in the fault rate per shot
        (-(1.0 - 2.0 * p1).ln(), 2.0 * sigma_p / (1.0 - 2.0 * p1))
    };
    let (t1, s1) = lambda(1, "fold/1");
    for scale in [3u32, 5, 7] {
        let (ts, ss) = lambda(scale, &format!("fold/{scale}"));
        let combined = (ss * ss + (scale as f64 * s1).powi(2)).sqrt();
        assert!(
            (ts - scale as f64 * t1).abs() < 5.0 * combined,
            "scale {scale}: fault statistic {ts} vs {} (5 sigma {})",
            scale as f64 * t1,
            5.0 * combined
        );
    }
}

#[test]
fn overlap_protocols_agree_on_all_spin_flip_rows() {
    let s0 = literal_states(Channel::OneS0);
    let s1 = literal_states(Channel::ThreeS1);
    let theta_of = |channel: Channel, level: usize| -> Theta {
        if channel == Channel::OneS0 { s0.thetas[level] } else { s1.thetas[level] }
    };
    let noise = NoiseModel::none();
    let shots = 20_000;
    let trials = 12;
    for t in M1_TRANSITIONS {
        let ti = theta_of(t.from.0, t.from.1);
        let tf = theta_of(t.to.0, t.to.1);
        let mut direct = Vec::new();
        let mut swap = Vec::new();
        for k in 0..trials {
            let mut rng = stream_rng(104, &format!("agree/{}/{k}", t.label));
            direct
                .push(direct_overlap_sampled(&ti, &tf, shots, &noise, &mut rng, None).unwrap());
            swap.push(swap_overlap_sampled(&ti, &tf, shots, &noise, &mut rng, None).unwrap());
        }
        let (dm, dse) = trial_stats(&direct);
        let (sm, sse) = trial_stats(&swap);
        let combined = (dse * dse + sse * sse).sqrt();
        assert!(
            (dm - sm).abs() < 3.0 * combined,
            "{}: direct {dm} vs swap {sm} differ beyond 3 sigma {combined}",
            t.label
        );
    }
}

/// Exact ancilla expectation of the interference circuit pair.
fn interference_term_exact(ket: &Theta, bra: &Theta, string: &PauliString) -> Complex64 {
    let re = hadamard_test_circuit(ket, bra, string, false).run().unwrap();
    let im = hadamard_test_circuit(ket, bra, string, true).run().unwrap();
    Complex64::new(
        parity_expectation(&re.probabilities(), 1 << 2),
        parity_expectation(&im.probabilities(), 1 << 2),
    )
}

#[test]
fn interference_elements_conjugate_under_state_exchange() {
    let mut rng = stream_rng(105, "hermitian");
    use rand::Rng;
    for _ in 0..5 {
        let a: Theta = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
        let b: Theta = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
        for string in PauliString::enumerate(2) {
            let fwd = interference_term_exact(&a, &b, &string);
            let rev = interference_term_exact(&b, &a, &string);
            assert!(
                (fwd - rev.conj()).norm() < 1e-8,
                "{}: {fwd} vs conj {rev}",
                string.label()
            );
        }
    }
}

#[test]
fn overlaps_with_full_eigenbasis_are_complete() {
    for channel in Channel::ALL {
        let st = literal_states(channel);
        let mut rng = stream_rng(106, "complete");
        use rand::Rng;
        let raw: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm: f64 = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        let psi: Vec<f64> = raw.iter().map(|x| x / norm).collect();
        let total: f64 = (0..4).map(|k| overlap_squared_exact(&psi, &eigvec(&st, k))).sum();
        assert!((total - 1.0).abs() < 1e-6, "{channel:?}: sum of overlaps {total}");
    }
}

#[test]
fn term_by_term_interference_matches_dense_contraction() {
    let s0 = literal_states(Channel::OneS0);
    let p1 = literal_states(Channel::OneP1);
    let d: Mat = e1_literal(LiteralVariant::SelfConsistent);
    let sum = PauliSum::decompose(&d, 1e-12).unwrap();
    for (p_level, s_level) in [(0usize, 0usize), (1, 1), (0, 1), (1, 2), (0, 2)] {
        let dense = dipole_element_exact(&eigvec(&p1, p_level), &d, &eigvec(&s0, s_level));
        let mut total = Complex64::new(0.0, 0.0);
        for term in sum.terms() {
            total += term.coeff
                * interference_term_exact(
                    &s0.thetas[s_level],
                    &p1.thetas[p_level],
                    &term.string,
                );
        }
        assert!(
            (total.norm() - dense).abs() < 1e-8,
            "P{p_level}/S{s_level}: circuit sum {} vs dense {dense}",
            total.norm()
        );
    }
}
