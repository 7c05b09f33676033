use thiserror::Error;

/// Errors produced by the library.
///
/// Vertices are reported 1-based, matching the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex set {0:?} is not strongly connected")]
    InvalidComponent(Vec<usize>),

    #[error("illegal firing of v{vertex}: holds {chips} chips, out-degree {degree}")]
    IllegalFiring {
        vertex: usize,
        chips: String,
        degree: String,
    },

    #[error("step budget of {cap} firings exceeded")]
    StepBudgetExceeded { cap: u64 },

    #[error("state budget of {cap} distributions exceeded")]
    StateBudgetExceeded { cap: usize },

    #[error("firing sequence is not legal at position {position}")]
    ReplayFailure { position: u64 },

    #[error("graph is not Eulerian")]
    NotEulerian,

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("witness of {length} firings exceeds the expansion limit {limit}")]
    WitnessTooLong { length: String, limit: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
