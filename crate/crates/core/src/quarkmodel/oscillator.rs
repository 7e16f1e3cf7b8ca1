//! Harmonic-oscillator radial basis and matrix elements.

use crate::error::{CoreError, Result};
use crate::linalg::Mat;
use crate::params::{BasisSpec, Channel, ModelParams};
use crate::quadrature::integrate;
use crate::quarkmodel::potential::channel_potential;

const R_MAX: f64 = 20.0;
const QUAD_TOL: f64 = 1e-9;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
fn gamma_half(m: usize) -> f64 {
    factorial(2 * m) * std::f64::consts::PI.sqrt() / (4.0f64.powi(m as i32) * factorial(m))
}

/// Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 + alpha - x,
        _ => {
            let mut lm2 = 1.0;
            let mut lm1 = 1.0 + alpha - x;
            for k in 2..=n {
                let kf = k as f64;
                let l = ((2.0 * kf - 1.0 + alpha - x) * lm1 - (kf - 1.0 + alpha) * lm2) / kf;
                lm2 = lm1;
                lm1 = l;
            }
            lm1
        }
    }
}

/// Normalized oscillator radial function R_{n,l}(r) for width parameter
/// nu = mu*omega, satisfying  int R_{n,l}(r)^2 r^2 dr = 1.
pub fn radial_wavefunction(nu: f64, n: usize, l: u32, r: f64) -> f64 {
    let lf = l as f64;
    // Gamma(n + l + 3/2) has half-integer argument for integer n, l
    let norm = (2.0 * factorial(n) * nu.powf(lf + 1.5) / gamma_half(n + l as usize + 1)).sqrt();
    norm * r.powi(l as i32) * (-0.5 * nu * r * r).exp() * laguerre(n, lf + 0.5, nu * r * r)
}

fn entry_error(e: CoreError, i: usize, j: usize) -> CoreError {
    match e {
        CoreError::QuadratureTolerance { a, b, tol, err, .. } => {
            CoreError::QuadratureTolerance { a, b, tol, err, i, j }
        }
        other => other,
    }
}

/// Channel Hamiltonian in the truncated oscillator basis:
/// H_ij = delta_ij omega (2i + l + 3/2) + <R_i | V - mu omega^2 r^2 / 2 | R_j>.
pub fn ho_matrix(params: &ModelParams, channel: Channel, basis: &BasisSpec) -> Result<Mat> {
    let n = basis.n_states;
    let l = basis.l;
    let nu = basis.nu(params);
    let mu = params.mu_fm();
    let omega = basis.omega;
    let mut h = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let integrand = |r: f64| {
                let w = channel_potential(params, channel, r) - 0.5 * mu * omega * omega * r * r;
                radial_wavefunction(nu, i, l, r) * radial_wavefunction(nu, j, l, r) * w * r * r
            };
            let q = integrate(integrand, 0.0, R_MAX, QUAD_TOL).map_err(|e| entry_error(e, i, j))?;
            h[(i, j)] = q.value;
            h[(j, i)] = q.value;
        }
        h[(i, i)] += basis.level_energy(i);
    }
    Ok(h)
}

/// Radial dipole matrix <R_{n',l=1} | r | R_{n,l=0}> between the P-wave basis
/// (rows) and the S-wave basis (columns), both at the same omega.
///
/// Upper bidiagonal: only column n = row and n = row + 1 survive.
pub fn e1_matrix(params: &ModelParams, basis: &BasisSpec) -> Result<Mat> {
    let n = basis.n_states;
    let nu = params.mu_fm() * basis.omega;
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let integrand = |r: f64| {
                radial_wavefunction(nu, i, 1, r) * r * radial_wavefunction(nu, j, 0, r) * r * r
            };
            let q = integrate(integrand, 0.0, R_MAX, QUAD_TOL).map_err(|e| entry_error(e, i, j))?;
            m[(i, j)] = q.value;
        }
    }
    Ok(m)
}

/// Closed form of `e1_matrix`: with length scale b = 1/sqrt(nu),
/// diagonal b*sqrt(n + 3/2) and superdiagonal -b*sqrt(n + 1).
pub fn e1_matrix_closed_form(params: &ModelParams, basis: &BasisSpec) -> Mat {
    let n = basis.n_states;
    let b = 1.0 / (params.mu_fm() * basis.omega).sqrt();
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = b * (i as f64 + 1.5).sqrt();
        if i + 1 < n {
            m[(i, i + 1)] = -b * (i as f64 + 1.0).sqrt();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quarkmodel::potential::contact_prefactor;
    use approx::assert_relative_eq;

    fn defaults() -> (ModelParams, BasisSpec) {
        (ModelParams::default(), BasisSpec::new(4, 0, 1.2))
    }

    #[test]
    fn gamma_half_values() {
        let sp = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma_half(0), sp, max_relative = 1e-14);
        assert_relative_eq!(gamma_half(1), 0.5 * sp, max_relative = 1e-14);
        assert_relative_eq!(gamma_half(2), 0.75 * sp, max_relative = 1e-14);
        assert_relative_eq!(gamma_half(3), 1.875 * sp, max_relative = 1e-14);
    }

    #[test]
    fn laguerre_low_orders() {
        assert_relative_eq!(laguerre(1, 0.5, 2.0), -0.5, max_relative = 1e-14);
        // L_2^a(x) = x^2/2 - (a+2)x + (a+1)(a+2)/2
        let (a, x) = (1.5, 0.7);
        assert_relative_eq!(
            laguerre(2, a, x),
            x * x / 2.0 - (a + 2.0) * x + (a + 1.0) * (a + 2.0) / 2.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn basis_orthonormal() {
        let (p, b) = defaults();
        let nu = b.nu(&p);
        for l in 0..=1u32 {
            for n in 0..4usize {
                for m in n..4usize {
                    let q = integrate(
                        |r| radial_wavefunction(nu, n, l, r) * radial_wavefunction(nu, m, l, r) * r * r,
                        0.0,
                        R_MAX,
                        1e-11,
                    )
                    .unwrap();
                    let want = if n == m { 1.0 } else { 0.0 };
                    assert_relative_eq!(q.value, want, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn pure_oscillator_diagonal_entries() {
        // with all couplings off, V = 0 and the matrix reduces to
        // omega(2n + l + 3/2) - mu omega^2 <r^2>/2; diagonal <r^2> = (2n+l+3/2)/nu
        let p = ModelParams {
            alpha_s: 0.0,
            b_conf: 0.0,
            ..ModelParams::default()
        };
        for l in 0..=1u32 {
            let b = BasisSpec::new(4, l, 1.2);
            let h = ho_matrix(&p, if l == 0 { Channel::OneS0 } else { Channel::OneP1 }, &b).unwrap();
            for n in 0..4usize {
                let want = b.omega * (n as f64 + l as f64 / 2.0 + 0.75);
                assert_relative_eq!(h[(n, n)], want, epsilon = 1e-8);
            }
            // r^2 couples neighboring n: tridiagonal, nothing beyond
            assert!(h[(0, 1)].abs() > 1e-3);
            assert!(h[(0, 2)].abs() < 1e-8);
            assert!(h[(0, 3)].abs() < 1e-8);
        }
        // l = 0 ground entry at omega = 1.2: 0.75 * omega = 0.9
        let b = BasisSpec::new(4, 0, 1.2);
        let h = ho_matrix(&p, Channel::OneS0, &b).unwrap();
        assert_relative_eq!(h[(0, 0)], 0.9, epsilon = 1e-8);
    }

    #[test]
    fn hyperfine_ground_element_closed_form() {
        // <R_00 | exp(-sigma^2 r^2) | R_00> = (nu / (nu + sigma^2))^{3/2}
        let (p, b) = defaults();
        let nu = b.nu(&p);
        let s2 = p.sigma_fm() * p.sigma_fm();
        let q = integrate(
            |r| {
                let w = radial_wavefunction(nu, 0, 0, r);
                w * w * (-s2 * r * r).exp() * r * r
            },
            0.0,
            R_MAX,
            1e-12,
        )
        .unwrap();
        assert_relative_eq!(q.value, (nu / (nu + s2)).powf(1.5), epsilon = 1e-10);
        assert_relative_eq!(q.value, 0.04554754, epsilon = 1e-7);
    }

    #[test]
    fn hyperfine_splitting_of_s_wave_matrices() {
        let (p, b) = defaults();
        let h_singlet = ho_matrix(&p, Channel::OneS0, &b).unwrap();
        let h_triplet = ho_matrix(&p, Channel::ThreeS1, &b).unwrap();
        // splitting = full contact matrix element (factor +1/4 - (-3/4) = 1)
        let d00 = h_triplet[(0, 0)] - h_singlet[(0, 0)];
        let d01 = h_triplet[(0, 1)] - h_singlet[(0, 1)];
        assert_relative_eq!(d00, 0.1515278, epsilon = 2e-6);
        assert_relative_eq!(d01, 0.1619136, epsilon = 2e-6);
        let nu = b.nu(&p);
        let s2 = p.sigma_fm() * p.sigma_fm();
        assert_relative_eq!(
            d00,
            contact_prefactor(&p) * (nu / (nu + s2)).powf(1.5),
            epsilon = 1e-8
        );
    }

    #[test]
    fn computed_matrices_at_defaults() {
        let (p, _) = defaults();
        let cases: [(Channel, [[f64; 4]; 4]); 3] = [
            (
                Channel::OneS0,
                [
                    [0.99088, -0.89292, -0.77343, -0.56210],
                    [-0.89292, 3.43692, -0.59139, -0.87058],
                    [-0.77343, -0.59139, 5.52791, -0.18901],
                    [-0.56210, -0.87058, -0.18901, 7.44981],
                ],
            ),
            (
                Channel::ThreeS1,
                [
                    [1.14241, -0.73100, -0.61550, -0.41326],
                    [-0.73100, 3.61239, -0.41782, -0.70475],
                    [-0.61550, -0.41782, 5.70195, -0.02051],
                    [-0.41326, -0.70475, -0.02051, 7.61507],
                ],
            ),
            (
                Channel::OneP1,
                [
                    [2.91994, -0.25967, -0.38651, -0.22972],
                    [-0.25967, 5.00164, 0.00948, -0.51514],
                    [-0.38651, 0.00948, 6.91006, 0.37240],
                    [-0.22972, -0.51514, 0.37240, 8.71640],
                ],
            ),
        ];
        for (ch, want) in cases {
            let b = BasisSpec::for_channel(ch);
            let h = ho_matrix(&p, ch, &b).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert!(
                        (h[(i, j)] - want[i][j]).abs() < 1e-4,
                        "{ch} ({i},{j}): {} vs {}",
                        h[(i, j)],
                        want[i][j]
                    );
                }
            }
            assert_eq!(h.symmetry_defect(), 0.0);
        }
    }

    #[test]
    fn dipole_matrix_matches_closed_form() {
        let (p, b) = defaults();
        let m = e1_matrix(&p, &b).unwrap();
        let c = e1_matrix_closed_form(&p, &b);
        assert!(m.max_abs_diff(&c) < 1e-6);
        // length scale b = 1/sqrt(nu) = 0.4714842
        let blen = 1.0 / b.nu(&p).sqrt();
        assert_relative_eq!(blen, 0.47148417549848093, epsilon = 1e-12);
        assert_relative_eq!(m[(0, 0)], blen * 1.5f64.sqrt(), epsilon = 1e-7);
        assert_relative_eq!(m[(0, 1)], -blen, epsilon = 1e-7);
        // strictly bidiagonal: everything else vanishes
        for i in 0..4 {
            for j in 0..4 {
                if j != i && j != i + 1 {
                    assert!(m[(i, j)].abs() < 1e-8, "({i},{j}) = {}", m[(i, j)]);
                }
            }
        }
    }
}
