use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate triangle (twice-area below tolerance)")]
    DegenerateTriangle,

    #[error("no acceptable draw after {attempts} consecutive rejections")]
    NonConvergence { attempts: u64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("non-finite observation")]
    NonFinite,

    #[error("insufficient data: {needed} observations required, {have} available")]
    InsufficientData { needed: u64, have: u64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.into())
    }
}
