use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("detuning {name} is zero; the perturbative coefficients divide by it")]
    ZeroDetuning { name: &'static str },

    #[error("degenerate detunings: |dw1 {op} dw2| = {gap:e} <= {eps:e}")]
    DegenerateDetunings { op: char, gap: f64, eps: f64 },

    #[error("absolute frequencies inconsistent with {name}: expected {expected:e}, got {actual:e}")]
    InconsistentFrequencies {
        name: &'static str,
        expected: f64,
        actual: f64,
    },

    #[error("non-finite parameter {0}")]
    NonFinite(&'static str),

    #[error("time grid is empty")]
    EmptyGrid,

    #[error("pump amplitude alpha1 must be non-zero for a (partially) spontaneous process")]
    ZeroPump,

    #[error("Fock space dimension {dim} exceeds the limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("coherent-state tail mass {tail:e} above bound {bound:e}")]
    TailMassTooLarge { tail: f64, bound: f64 },

    #[error("propagator tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("a mode pair needs two distinct modes")]
    SameMode,

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
