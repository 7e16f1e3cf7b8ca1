//! Run bookkeeping: the output directory, input/output hashing, and the
//! manifest every command leaves behind.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use qvqite_core::CoreError;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}; partial outputs kept")]
    NoConvergence(String),
}

impl CliError {
    /// 2 for usage/input problems, 3 for numerical non-convergence.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Io(_) | CliError::Json(_) => 2,
            CliError::NoConvergence(_) => 3,
            CliError::Core(e) => match e {
                CoreError::EigenNoConvergence(_)
                | CoreError::BoundStateSearch { .. }
                | CoreError::EvolutionNoConvergence(_)
                | CoreError::QuadratureTolerance { .. } => 3,
                _ => 2,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Collects everything the manifest records while a command writes its
/// artifacts.
pub struct RunContext {
    out_dir: PathBuf,
    master_seed: u64,
    started: u64,
    command_line: Vec<String>,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl RunContext {
    pub fn new(out_dir: &Path, master_seed: u64) -> Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(RunContext {
            out_dir: out_dir.to_path_buf(),
            master_seed,
            started: unix_now(),
            command_line: std::env::args().skip(1).collect(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    /// Read an input file, recording its hash in the manifest.
    pub fn read_input(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path)?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes)
            .map_err(|e| CliError::Usage(format!("{}: not UTF-8 ({e})", path.display())))
    }

    /// Write one artifact into the output directory and register it.
    pub fn write_text(&mut self, name: &str, content: &str) -> Result<()> {
        let path = self.path(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, content)?;
        self.outputs.insert(name.to_string(), sha256_hex(content.as_bytes()));
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, value: &serde_json::Value) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write_text(name, &text)
    }

    /// Write the run manifest and close the context.
    pub fn finish(self, config: serde_json::Value) -> Result<()> {
        let path = self.path("manifest.json");
        let manifest = serde_json::json!({
            "tool": format!("qvqite {}", env!("CARGO_PKG_VERSION")),
            "command_line": self.command_line,
            "master_seed": self.master_seed,
            "config": config,
            "inputs": self.inputs,
            "started_unix": self.started,
            "finished_unix": unix_now(),
            "outputs": self.outputs,
        });
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

/// Run `f` on a rayon pool of the requested width; task identity, not
/// scheduling, keys every random stream, so results do not depend on it.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}
