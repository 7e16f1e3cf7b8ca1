//! Shared argument plumbing: seeds, noise models, matrix provenance and
//! ansatz-angle sources.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use qvqite_core::linalg::Mat;
use qvqite_core::params::{BasisSpec, Channel, ModelParams};
use qvqite_core::quarkmodel::{self, e1_literal, LiteralVariant, MatrixExport, MatrixSource};
use qvqite_core::simulator::NoiseModel;
use qvqite_core::vqite::Theta;

use crate::context::{CliError, Result, RunContext};

/// `--seed`, the QVQITE_SEED environment variable, or zero.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("QVQITE_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("QVQITE_SEED={v} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

/// `--noise` accepts the three presets or a path to a noise-model JSON file.
pub fn resolve_noise(arg: Option<&str>, ctx: &mut RunContext) -> Result<NoiseModel> {
    let model = match arg {
        None | Some("none") => NoiseModel::none(),
        Some("default-readout") => NoiseModel::default_readout(),
        Some("default-depol") => NoiseModel::default_depol(),
        Some("default-full") => NoiseModel::default_full(),
        Some(path) => {
            let text = ctx.read_input(Path::new(path))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input { path: path.to_string(), source: e })?
        }
    };
    model.validate()?;
    Ok(model)
}

/// Matrix provenance shared by the model, pauli, vqite and amp commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceArg {
    Computed,
    Literal,
    Both,
}

pub fn matrix_source(source: SourceArg, verbatim: bool) -> MatrixSource {
    let variant = if verbatim { LiteralVariant::Verbatim } else { LiteralVariant::SelfConsistent };
    match source {
        SourceArg::Literal | SourceArg::Both => MatrixSource::Literal(variant),
        SourceArg::Computed => MatrixSource::Computed,
    }
}

pub fn channel_hamiltonian(
    channel: Channel,
    source: MatrixSource,
    omega: f64,
) -> Result<Mat> {
    let params = ModelParams::default();
    let basis = BasisSpec::new(4, channel.l(), omega);
    Ok(quarkmodel::hamiltonian(&params, channel, &basis, source)?)
}

pub fn dipole_matrix(source: MatrixSource, omega: f64) -> Result<Mat> {
    match source {
        MatrixSource::Literal(variant) => Ok(e1_literal(variant)),
        MatrixSource::Computed => {
            let params = ModelParams::default();
            let basis = BasisSpec::new(4, 0, omega);
            Ok(quarkmodel::e1_matrix(&params, &basis)?)
        }
    }
}

/// Load a matrix JSON artifact, reporting the parse position on failure.
pub fn load_matrix(path: &Path, ctx: &mut RunContext) -> Result<MatrixExport> {
    let text = ctx.read_input(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input { path: path.display().to_string(), source: e })
}

/// Ansatz angles per channel, either inverted from eigenvectors or read
/// back from earlier evolution runs.
pub struct ThetaSource {
    by_channel: HashMap<Channel, Vec<Theta>>,
}

impl ThetaSource {
    /// Closed-form angles for the eigenvectors of each channel matrix.
    pub fn from_eigenvectors(
        channels: &[Channel],
        source: MatrixSource,
        omega: f64,
    ) -> Result<Self> {
        let mut by_channel = HashMap::new();
        for &channel in channels {
            let h = channel_hamiltonian(channel, source, omega)?;
            let states = qvqite_core::transitions::channel_states(&h)?;
            by_channel.insert(channel, states.thetas);
        }
        Ok(ThetaSource { by_channel })
    }

    /// Angles recorded in the spectrum summaries of previous `vqite` runs,
    /// one run directory per channel.
    pub fn from_run_dirs(dirs: &[PathBuf], ctx: &mut RunContext) -> Result<Self> {
        let mut by_channel = HashMap::new();
        for dir in dirs {
            let (label, thetas) = read_spectrum_thetas(dir, ctx)?;
            let channel: Channel = label.parse().map_err(|_| {
                CliError::Usage(format!(
                    "{}: channel {label:?} is not a named channel",
                    dir.display()
                ))
            })?;
            by_channel.insert(channel, thetas);
        }
        Ok(ThetaSource { by_channel })
    }

    pub fn theta(&self, channel: Channel, level: usize) -> Result<Theta> {
        self.by_channel
            .get(&channel)
            .and_then(|v| v.get(level))
            .copied()
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "no ansatz angles for {channel} level {}; supply a run directory for that channel with enough states",
                    level + 1
                ))
            })
    }
}

/// Channel tag and per-state angles from a run directory's spectrum.json.
pub fn read_spectrum_thetas(dir: &Path, ctx: &mut RunContext) -> Result<(String, Vec<Theta>)> {
    let path = dir.join("spectrum.json");
    let text = ctx.read_input(&path)?;
    let summary: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input { path: path.display().to_string(), source: e })?;
    let bad = |what: &str| CliError::Usage(format!("{}: {what}", path.display()));
    let label = summary["channel"].as_str().ok_or_else(|| bad("missing channel tag"))?;
    let states = summary["states"].as_array().ok_or_else(|| bad("missing states array"))?;
    let mut thetas = Vec::new();
    for st in states {
        let raw = st["theta"].as_array().ok_or_else(|| bad("state without theta"))?;
        if raw.len() != 3 {
            return Err(bad(&format!("theta has {} entries, expected 3", raw.len())));
        }
        let mut t: Theta = [0.0; 3];
        for (slot, v) in t.iter_mut().zip(raw) {
            *slot = v.as_f64().ok_or_else(|| bad("non-numeric theta entry"))?;
        }
        thetas.push(t);
    }
    Ok((label.to_string(), thetas))
}
