//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(u32),

    #[error("unknown attribute index {0}")]
    UnknownAttribute(u32),

    #[error("hypergraph is not simple")]
    NotSimple,

    #[error("edge index {0} out of range")]
    EdgeIndexOutOfRange(usize),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
