use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed patch: {0}")]
    MalformedPatch(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("BFS root set is empty")]
    EmptyRootSet,

    #[error("{what} exceeded limit of {limit}")]
    LimitExceeded { what: &'static str, limit: u64 },

    #[error("instance with {size} vertices exceeds the {what} size limit of {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("unknown oracle `{0}`")]
    UnknownOracle(String),

    #[error("good family is empty")]
    EmptyFamily,

    #[error("family member {index} violates property 2: candidate `{candidate}` is infeasible")]
    FamilyPropertyViolated {
        index: usize,
        candidate: &'static str,
    },

    #[error("old solution is not a feasible {k}-path vertex cover of the old graph")]
    InfeasibleOldSolution { k: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("stated weight {stated} does not match recomputed weight {actual}")]
    WeightMismatch { stated: u64, actual: u64 },

    #[error("infeasible generator config: {0}")]
    InfeasibleConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
