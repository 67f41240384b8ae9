use thiserror::Error;

use crate::solver::SearchStats;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("signature mismatch: {0}")]
    Signature(String),

    /// Exhaustive enumeration refused; `force` lifts the guard.
    #[error("blow-up guard: {positions} tuple positions exceed the limit of {limit}")]
    BlowUp { positions: usize, limit: usize },

    #[error("logic error: {0}")]
    Logic(String),

    #[error("search budget exhausted after {} nodes", .0.nodes)]
    Timeout(Box<SearchStats>),

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn logic(msg: impl Into<String>) -> Self {
        Error::Logic(msg.into())
    }
}
