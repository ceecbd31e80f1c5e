use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument or an intermediate value fell outside the supported range.
    #[error("value out of range: {0}")]
    Range(String),

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(u64),

    /// The operation is not defined on this input (e.g. leaves of a one-vertex graph).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no seed set of size {size} with {leaves} leaves could be constructed")]
    Infeasible { size: usize, leaves: usize },

    #[error("malformed labeling: {0}")]
    MalformedLabeling(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid family spec: {0}")]
    InvalidFamily(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("seed set must be nonempty and contain only positive naturals")]
    InvalidSeed,
}

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}
