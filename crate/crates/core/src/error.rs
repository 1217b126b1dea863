use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),

    #[error("non-finite value {value} at {location}")]
    NonFinite { location: String, value: String },

    #[error("size guard: {0}")]
    SizeGuard(String),

    /// The request belongs to a different operation (for instance p = ∞ in the
    /// ascent estimator, which is handled by the Haagerup solver).
    #[error("redirected: {0}")]
    Redirect(String),

    #[error("unresolvable on this grid: {0}")]
    Unresolvable(String),

    #[error("window support leaks outside [-2.5, 2.5]^n (mass {mass:e})")]
    SupportLeakage { mass: f64 },

    #[error("numerical failure in {context}: {message}")]
    Numerical { context: String, message: String },

    #[error("i/o error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed data: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn numerical(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Numerical {
            context: context.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of a decomposition or solver, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
