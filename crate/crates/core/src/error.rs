use thiserror::Error;

/// Errors produced by the structures in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of bounds for length {len}")]
    OutOfBounds { index: usize, len: usize },

    #[error("symbol {symbol} out of range for alphabet size {sigma}")]
    SymbolOutOfRange { symbol: usize, sigma: usize },

    #[error("occurrence {ordinal} of {what} not found (only {available} present)")]
    NotFound {
        ordinal: usize,
        what: String,
        available: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("alphabet of size {sigma} not supported by {structure} (max {max})")]
    UnsupportedAlphabet {
        sigma: usize,
        max: usize,
        structure: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed container: {0}")]
    Container(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_symbol(symbol: usize, sigma: usize) -> Result<()> {
    if symbol >= sigma {
        Err(Error::SymbolOutOfRange { symbol, sigma })
    } else {
        Ok(())
    }
}

pub(crate) fn check_index(index: usize, len: usize) -> Result<()> {
    if index > len {
        Err(Error::OutOfBounds { index, len })
    } else {
        Ok(())
    }
}
