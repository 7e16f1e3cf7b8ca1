//! Central potential: color Coulomb + linear confinement + smeared
//! spin-spin contact term. All lengths in fm, energies in fm^-1.

use crate::params::{Channel, ModelParams};
use std::f64::consts::PI;

/// Prefactor of the Gaussian-smeared contact term,
/// (32 pi alpha_s / 9 m_c^2) * (sigma / sqrt(pi))^3, fm^-1.
pub fn contact_prefactor(params: &ModelParams) -> f64 {
    let m = params.m_c_fm();
    let s = params.sigma_fm();
    32.0 * PI * params.alpha_s / (9.0 * m * m) * (s / PI.sqrt()).powi(3)
}

/// Spin-independent part: -4 alpha_s / (3 r) + b r.
pub fn central_potential(params: &ModelParams, r: f64) -> f64 {
    -params.coulomb_coeff() / r + params.b_conf_fm() * r
}

/// Full channel potential including the hyperfine term weighted by
/// <S_q . S_qbar>.
pub fn channel_potential(params: &ModelParams, channel: Channel, r: f64) -> f64 {
    let s = params.sigma_fm();
    central_potential(params, r)
        + channel.spin_spin_factor() * contact_prefactor(params) * (-s * s * r * r).exp()
}

/// Radial-equation coefficient f(r) = 2 mu (E - V(r)) - l(l+1)/r^2, so that
/// u'' + f u = 0.
pub fn radial_coefficient(params: &ModelParams, channel: Channel, e: f64, r: f64) -> f64 {
    let l = channel.l() as f64;
    2.0 * params.mu_fm() * (e - channel_potential(params, channel, r)) - l * (l + 1.0) / (r * r)
}
