//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// An exact checker was asked to enumerate an instance beyond its size limit.
    #[error("size limit exceeded: {0}")]
    SizeLimit(&'static str),

    /// Attempt to insert an item that the table already stores.
    #[error("item {0} is already stored")]
    DuplicateInsert(u64),

    /// A numeric solver failed to reach its residual tolerance.
    #[error("solver failed: {0}")]
    Solver(&'static str),

    /// Malformed hypergraph fixture text.
    #[error("malformed hypergraph text: {0}")]
    Parse(String),

    /// Invalid experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
