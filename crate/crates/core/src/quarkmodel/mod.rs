//! Charm-anticharm potential model in a truncated oscillator basis.
//!
//! Two independent routes to the spectrum live here: direct grid integration
//! of the radial equation (`numerov`) and a four-state harmonic-oscillator
//! basis expansion (`oscillator`) whose matrices feed the quantum-circuit
//! side of the library. `literals` carries the fixed built-in matrices used
//! as reference data, and `sweep` scans the basis frequency.

pub mod literals;
pub mod numerov;
pub mod oscillator;
pub mod potential;
pub mod sweep;

pub use literals::{e1_literal, hamiltonian_literal, LiteralVariant};
pub use numerov::{solve_radial, NumerovGrid, RadialSolution};
pub use oscillator::{e1_matrix, e1_matrix_closed_form, ho_matrix, radial_wavefunction};
pub use sweep::{omega_sweep, sweep_csv, SweepRow};

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::fmtnum::{csv_row, fmt_sig};
use crate::linalg::{jacobi_eigh, Mat};
use crate::params::{BasisSpec, Channel, ModelParams};

/// Where a Hamiltonian matrix comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixSource {
    /// Quadrature over the oscillator basis with the given parameters.
    Computed,
    /// Built-in fixed matrices (see `literals`).
    Literal(LiteralVariant),
}

impl MatrixSource {
    pub fn tag(&self) -> &'static str {
        match self {
            MatrixSource::Computed => "computed",
            MatrixSource::Literal(_) => "literal",
        }
    }
}

/// Serialized dense matrix with unit and provenance tags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixExport {
    pub dim: usize,
    pub units: String,
    pub entries_row_major: Vec<[f64; 2]>,
    pub source: String,
    pub channel: String,
}

impl MatrixExport {
    pub fn new(mat: &Mat, units: &str, source: &str, channel: &str) -> Self {
        assert_eq!(mat.n_rows(), mat.n_cols());
        MatrixExport {
            dim: mat.n_rows(),
            units: units.to_string(),
            entries_row_major: mat.data().iter().map(|&re| [re, 0.0]).collect(),
            source: source.to_string(),
            channel: channel.to_string(),
        }
    }

    /// Recover the dense matrix; entries must be real.
    pub fn to_mat(&self) -> Result<Mat> {
        if self.entries_row_major.len() != self.dim * self.dim {
            return Err(CoreError::BadMatrixShape(
                "dim^2 complex entries",
                self.entries_row_major.len(),
                self.dim,
            ));
        }
        if self.entries_row_major.iter().any(|e| e[1] != 0.0) {
            return Err(CoreError::BadMatrixShape(
                "a real matrix",
                self.dim,
                self.dim,
            ));
        }
        Ok(Mat::from_vec(
            self.dim,
            self.dim,
            self.entries_row_major.iter().map(|e| e[0]).collect(),
        ))
    }
}

/// Channel Hamiltonian in the four-state oscillator basis, fm^-1.
pub fn hamiltonian(
    params: &ModelParams,
    channel: Channel,
    basis: &BasisSpec,
    source: MatrixSource,
) -> Result<Mat> {
    match source {
        MatrixSource::Computed => ho_matrix(params, channel, basis),
        MatrixSource::Literal(variant) => Ok(hamiltonian_literal(channel, variant)),
    }
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a channel matrix.
pub fn diagonalize(h: &Mat) -> Result<(Vec<f64>, Mat)> {
    jacobi_eigh(h)
}

/// Level energies (fm^-1) with the corresponding meson masses (MeV) as CSV.
pub fn spectrum_csv(energies: &[f64], params: &ModelParams, sig: usize) -> String {
    let mut out = csv_row(&["level", "energy_fm", "mass_mev"]);
    for (k, &e) in energies.iter().enumerate() {
        out.push('\n');
        out.push_str(&csv_row(&[
            (k + 1).to_string(),
            fmt_sig(e, sig),
            fmt_sig(params.mass_from_energy(e), sig),
        ]));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_export_roundtrip() {
        let h = hamiltonian_literal(Channel::OneS0, LiteralVariant::SelfConsistent);
        let export = MatrixExport::new(&h, "fm^-1", "literal", "1S0");
        let json = serde_json::to_string(&export).unwrap();
        let back: MatrixExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.dim, 4);
        assert_eq!(back.units, "fm^-1");
        assert_eq!(back.channel, "1S0");
        assert_eq!(back.to_mat().unwrap().max_abs_diff(&h), 0.0);
    }

    #[test]
    fn complex_entries_are_rejected() {
        let mut export = MatrixExport::new(&Mat::identity(2), "fm", "computed", "E1");
        export.entries_row_major[1] = [0.0, 0.5];
        assert!(export.to_mat().is_err());
        export.entries_row_major.pop();
        assert!(export.to_mat().is_err());
    }

    #[test]
    fn source_tags() {
        assert_eq!(MatrixSource::Computed.tag(), "computed");
        assert_eq!(
            MatrixSource::Literal(LiteralVariant::Verbatim).tag(),
            "literal"
        );
    }

    #[test]
    fn spectrum_csv_rows() {
        let p = ModelParams::default();
        let csv = spectrum_csv(&[0.66493], &p, 6);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "level,energy_fm,mass_mev");
        assert_eq!(lines[1], "1,0.66493,3090");
    }
}
