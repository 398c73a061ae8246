use thiserror::Error;

/// Errors surfaced by parsing, validation and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally invalid model or objective.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The requested objective/mode combination has no solver
    /// (e.g. disjunctive safety objectives on MDPs, conjunctive reachability).
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// Exhaustive oracles refuse instances beyond their size guard.
    #[error("instance too large for brute-force oracle: n = {n} > {max}")]
    SizeGuard { n: usize, max: usize },

    /// A documented algorithm precondition was violated at runtime.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
