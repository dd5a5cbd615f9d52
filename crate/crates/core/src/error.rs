use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of a special function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The combined exponent of a scaled kernel exceeds what `f64` can hold.
    /// Carries the exponent so the caller can pick a better scaling length.
    #[error("kernel overflow: combined exponent {exponent:.3} exceeds {limit:.3}")]
    Overflow { exponent: f64, limit: f64 },

    #[error("kernel is singular at the source point (dimension {dimension}, order {order})")]
    Singularity { dimension: usize, order: usize },

    #[error(
        "knot {knot} falls within {distance:.3e} of a segment junction; perturb the knot count"
    )]
    Placement { knot: usize, distance: f64 },

    #[error("geometry error: {0}")]
    Geometry(String),

    /// Exact zero pivot during LU factorization.
    #[error("singular interpolation matrix: zero pivot in column {pivot}")]
    Assembly { pivot: usize },

    #[error("solver state error: {0}")]
    State(String),

    #[error("non-finite value while evaluating {0}")]
    Evaluation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
