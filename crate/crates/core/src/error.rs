use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: the basis needs at least one state")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    /// The requested state does not fit in the truncated basis.
    #[error(
        "truncation risk: displacement {displacement:.4} on Fock index {fock_index} \
         needs dim >= {required_dim}, got {dim}"
    )]
    TruncationRisk {
        displacement: f64,
        fock_index: usize,
        required_dim: usize,
        dim: usize,
    },

    #[error("state is not normalized: |norm^2 - 1| = {0:.3e}")]
    NotNormalized(f64),

    /// A quantity that must be real came out with a sizeable imaginary part;
    /// usually the basis is too small.
    #[error("imaginary residual {residual:.3e} exceeds {tolerance:.1e} ({context})")]
    ImaginaryResidual {
        residual: f64,
        tolerance: f64,
        context: String,
    },

    #[error("eigensolver failed to converge after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error at position {position}: expected {expected}, found {found:?}")]
    Parse {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
