//! Basis-frequency scan: variational spectra as a function of omega.

use crate::error::Result;
use crate::fmtnum::{csv_row, fmt_sig};
use crate::linalg::jacobi_eigh;
use crate::params::{BasisSpec, Channel, ModelParams};
use crate::quarkmodel::oscillator::ho_matrix;

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub omega: f64,
    pub energies: Vec<f64>,
}

/// Diagonalize the oscillator-basis Hamiltonian at each omega.
///
/// By the variational principle every eigenvalue is an upper bound on the
/// corresponding exact level, so the scan doubles as a basis-quality probe.
pub fn omega_sweep(params: &ModelParams, channel: Channel, omegas: &[f64]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(omegas.len());
    for &omega in omegas {
        let basis = BasisSpec::new(4, channel.l(), omega);
        let h = ho_matrix(params, channel, &basis)?;
        let (energies, _) = jacobi_eigh(&h)?;
        rows.push(SweepRow { omega, energies });
    }
    Ok(rows)
}

/// Inclusive uniform omega grid.
pub fn omega_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0 && max >= min);
    let n = ((max - min) / step).round() as usize;
    (0..=n).map(|i| min + i as f64 * step).collect()
}

/// Render a sweep as CSV with the given significant-digit count.
pub fn sweep_csv(rows: &[SweepRow], sig: usize) -> String {
    let n_levels = rows.first().map_or(0, |r| r.energies.len());
    let mut header = vec!["omega".to_string()];
    header.extend((1..=n_levels).map(|k| format!("E{k}")));
    let mut out = csv_row(&header);
    for row in rows {
        let mut fields = vec![fmt_sig(row.omega, sig)];
        fields.extend(row.energies.iter().map(|&e| fmt_sig(e, sig)));
        out.push('\n');
        out.push_str(&csv_row(&fields));
    }
    out.push('\n');
    out
}
