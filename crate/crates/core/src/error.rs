use thiserror::Error;

/// Errors raised by measure construction, transform evaluation and the
/// numerical back ends.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The measure's representation does not support the requested quantity.
    #[error("unsupported representation: {0}")]
    Unsupported(String),
    /// A root-finding bracket does not straddle the target.
    #[error("bracket error: {0}")]
    Bracket(String),
    /// A representation failed a runtime validity check (monotonicity,
    /// normalisation, ...).
    #[error("representation error: {0}")]
    Representation(String),
    /// A numerical routine did not converge.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// The subordination oracle failed.
    #[error("oracle error: {0}")]
    Oracle(String),
    /// A measure descriptor could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
