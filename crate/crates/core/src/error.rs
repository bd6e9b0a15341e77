use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported substitution: {0}")]
    UnsupportedSubstitution(String),

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("fidelity is ill-defined for odd-odd bipartition ({0}, {1})")]
    IllDefined(usize, usize),

    #[error("ground state is degenerate: kernel dimension {dim} for N = {sites}")]
    Degenerate { sites: usize, dim: usize },

    #[error("E0 is not an eigenvalue for N = {0}")]
    NotEigenvalue(usize),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
