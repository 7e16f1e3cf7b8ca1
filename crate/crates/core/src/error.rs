use thiserror::Error;

/// Error type shared across the library.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid channel label {0:?} (expected 1S0, 3S1 or 1P1)")]
    BadChannel(String),

    #[error("quadrature failed to reach tolerance {tol:e} on [{a}, {b}] (worst matrix entry ({i}, {j}), error estimate {err:e})")]
    QuadratureTolerance {
        a: f64,
        b: f64,
        tol: f64,
        err: f64,
        i: usize,
        j: usize,
    },

    #[error("eigen iteration did not converge after {0} sweeps")]
    EigenNoConvergence(usize),

    #[error("bound-state search failed for l={l} level {level}: {reason}")]
    BoundStateSearch {
        l: u32,
        level: usize,
        reason: String,
    },

    #[error("matrix is not {0} (size {1}x{2})")]
    BadMatrixShape(&'static str, usize, usize),

    #[error("pauli label {0:?} is not a string over I, X, Y, Z of length {1}")]
    BadPauliLabel(String, usize),

    #[error("circuit qubit index {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),

    #[error("penalty weight {alpha} does not dominate the spectral bound {bound}; deflation would not push converged states above the remaining spectrum")]
    PenaltyTooSmall { alpha: f64, bound: f64 },

    #[error("imaginary-time evolution did not converge within {0} steps")]
    EvolutionNoConvergence(usize),

    #[error("noise model: {0}")]
    BadNoiseModel(String),

    #[error("extrapolation needs at least {need} distinct scales, got {got}")]
    NotEnoughScales { need: usize, got: usize },

    #[error("noise folding needs an odd scale factor >= 1, got {0}")]
    BadFoldScale(u32),

    #[error("calibration matrix is numerically singular")]
    SingularCalibration,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
