use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list is empty")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("node {0} is already active")]
    AlreadyActive(usize),

    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("exact enumeration refused: {edges} edges exceeds the limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("config {config_id} has sequential records but no SN baseline")]
    MissingBaseline { config_id: usize },

    #[error("{path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::Parameter(message.into())
    }
}
