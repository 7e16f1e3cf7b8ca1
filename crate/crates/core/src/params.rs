use crate::error::CoreError;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// hbar*c in MeV*fm; divides GeV quantities into natural fm^-1 units.
pub const HBARC_MEV_FM: f64 = 197.32;
pub const HBARC_GEV_FM: f64 = HBARC_MEV_FM / 1000.0;

/// Potential-model parameters in GeV-based units.
///
/// The fitted values reproduce the low-lying charmonium spectrum with a
/// Coulomb + linear + smeared spin-spin potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Strong coupling of the color-Coulomb term.
    pub alpha_s: f64,
    /// Linear confinement slope, GeV^2.
    pub b_conf: f64,
    /// Charm quark mass, GeV.
    pub m_c: f64,
    /// Gaussian smearing width of the contact term, GeV.
    pub sigma: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            alpha_s: 0.5461,
            b_conf: 0.1425,
            m_c: 1.4794,
            sigma: 1.0946,
        }
    }
}

impl ModelParams {
    /// Charm mass in fm^-1.
    pub fn m_c_fm(&self) -> f64 {
        self.m_c / HBARC_GEV_FM
    }

    /// Reduced mass of the quark-antiquark pair, fm^-1.
    pub fn mu_fm(&self) -> f64 {
        0.5 * self.m_c_fm()
    }

    /// Confinement slope in fm^-2.
    pub fn b_conf_fm(&self) -> f64 {
        self.b_conf / (HBARC_GEV_FM * HBARC_GEV_FM)
    }

    /// Smearing width in fm^-1.
    pub fn sigma_fm(&self) -> f64 {
        self.sigma / HBARC_GEV_FM
    }

    /// Coefficient of the -1/r color-Coulomb term (dimensionless * fm^-1 * fm).
    pub fn coulomb_coeff(&self) -> f64 {
        4.0 * self.alpha_s / 3.0
    }

    /// Rest mass offset: meson mass = E[fm^-1] * hbar*c + 2 m_c, in MeV.
    pub fn mass_from_energy(&self, e_fm: f64) -> f64 {
        e_fm * HBARC_MEV_FM + 2.0 * self.m_c * 1000.0
    }
}

/// Charmonium channel in spectroscopic notation (2S+1)L(J).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    /// eta_c tower: spin singlet, L=0.
    OneS0,
    /// J/psi tower: spin triplet, L=0.
    ThreeS1,
    /// h_c tower: spin singlet, L=1.
    OneP1,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::OneS0, Channel::ThreeS1, Channel::OneP1];

    /// Orbital angular momentum.
    pub fn l(&self) -> u32 {
        match self {
            Channel::OneS0 | Channel::ThreeS1 => 0,
            Channel::OneP1 => 1,
        }
    }

    /// Expectation of S_q . S_qbar: -3/4 for spin singlets, +1/4 for triplets.
    pub fn spin_spin_factor(&self) -> f64 {
        match self {
            Channel::OneS0 | Channel::OneP1 => -0.75,
            Channel::ThreeS1 => 0.25,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Channel::OneS0 => "1S0",
            Channel::ThreeS1 => "3S1",
            Channel::OneP1 => "1P1",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Channel {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "1S0" => Ok(Channel::OneS0),
            "3S1" => Ok(Channel::ThreeS1),
            "1P1" => Ok(Channel::OneP1),
            _ => Err(CoreError::BadChannel(s.to_string())),
        }
    }
}

/// Truncated oscillator basis: radial quantum numbers n = 0..n_states-1 at
/// fixed l, with length scale set by the oscillator frequency omega (fm^-1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub n_states: usize,
    pub l: u32,
    pub omega: f64,
}

impl BasisSpec {
    pub fn new(n_states: usize, l: u32, omega: f64) -> Self {
        BasisSpec { n_states, l, omega }
    }

    /// Default four-state basis for a channel at omega = 1.2 fm^-1.
    pub fn for_channel(channel: Channel) -> Self {
        BasisSpec::new(4, channel.l(), 1.2)
    }

    /// Gaussian width parameter nu = mu * omega (fm^-2).
    pub fn nu(&self, params: &ModelParams) -> f64 {
        params.mu_fm() * self.omega
    }

    /// Oscillator energy of basis state n (0-based): omega * (2n + l + 3/2).
    pub fn level_energy(&self, n: usize) -> f64 {
        self.omega * (2.0 * n as f64 + self.l as f64 + 1.5)
    }
}
