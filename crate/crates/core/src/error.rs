use thiserror::Error;

/// Errors shared by every solver in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),
    /// An invariant that the algorithms guarantee was observed to fail.
    #[error("internal error: {0}")]
    Internal(String),
    /// No radius admits a feasible solution (e.g. a rank-0 matroid).
    #[error("instance has no feasible solution at any radius")]
    Unsolvable,
    /// Brute-force guard exceeded.
    #[error("refused: {0}")]
    Refused(String),
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<S: Into<String>>(msg: S) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn internal<S: Into<String>>(msg: S) -> Error {
    Error::Internal(msg.into())
}
