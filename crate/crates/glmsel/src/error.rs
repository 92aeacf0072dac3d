use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A response value lies outside the support of the requested family.
    #[error("response {y} is outside the support of the {family} family")]
    Support { family: &'static str, y: f64 },

    /// Mismatched vector or matrix dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An invalid numeric parameter (negative dispersion, bad AR coefficient, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The system stayed rank-deficient even at the maximum diagonal jitter.
    #[error("symmetric solve failed: matrix singular after maximum diagonal jitter")]
    SingularSystem,

    /// Fisher-information diagonal too small for the log-log normalization.
    #[error("degenerate information: diagonal entry {value} must exceed e")]
    DegenerateInformation { value: f64 },

    /// A generator was asked for a family it cannot produce.
    #[error("unsupported family for this generator: {0}")]
    UnsupportedFamily(&'static str),

    /// Exhaustive enumeration is capped to keep candidate counts tractable.
    #[error("exhaustive enumeration supports 1 <= p <= {max}, got {p}")]
    EnumerationBound { p: usize, max: usize },

    /// A malformed experiment or scenario configuration.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// An I/O failure, annotated with the offending path.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
