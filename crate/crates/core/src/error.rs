use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad lengths, symbols, duplicates, ranges).
    #[error("invalid input: {0}")]
    Input(String),
    /// An explicit enumeration guard was exceeded.
    #[error("resource limit exceeded: {0}")]
    Guard(String),
    /// The request is well formed but outside what the algorithm supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A padded instance could not be decoded.
    #[error("decode error: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
pub(crate) use input_err;
