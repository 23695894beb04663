use std::path::PathBuf;

use thiserror::Error;

/// Errors for state construction, dynamics, measures, and sweep I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("state is not normalized (norm deviates from 1 by {0:.3e})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("trace deviates from 1 by {0:.3e}")]
    InvalidTrace(f64),

    #[error("Fock cutoff {cutoff} too small for photon number {photon_number} (need at least {photon_number} + 2)")]
    CutoffTooSmall { cutoff: usize, photon_number: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series too short: extremum search needs at least 3 rows, got {0}")]
    SeriesTooShort(usize),

    #[error("evaluation failed at T={t}: {source}")]
    Evaluation {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep would evaluate {requested} samples, above the {limit} safety limit")]
    SweepTooLarge { requested: u64, limit: u64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
