use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid substitution rule: {0}")]
    InvalidRule(String),

    #[error("invalid toeplitz pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid rotation coding: {0}")]
    InvalidRotation(String),

    #[error("precision exhausted: convergent at depth {depth} certifies only {certified} of {requested} indices")]
    PrecisionExhausted {
        depth: usize,
        certified: usize,
        requested: usize,
    },

    #[error("insufficient scan: {0}")]
    InsufficientScan(String),

    #[error("source exhausted: needed {needed} symbols but only {available} are known")]
    SourceExhausted { needed: usize, available: usize },

    #[error("horizon too small: horizon {horizon} cannot hold a window of size {k}")]
    HorizonTooSmall { horizon: usize, k: usize },

    #[error("alphabet of size {0} is too large for subset search (limit 16)")]
    AlphabetTooLarge(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
