use thiserror::Error;

use crate::enlarge::LemmaViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed parameters or arguments (bad vertex index, `k = 0`, unknown model, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Structurally valid inputs that violate a required property
    /// (a claimed spanner that is not one, a non-subgraph).
    #[error("input invariant violated: {0}")]
    Invariant(String),

    #[error("not reconstructible by the greedy algorithm: {0}")]
    NotReconstructible(ReconstructFailure),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("oracle refused: {0}")]
    OracleCap(String),

    #[error(transparent)]
    Lemma(Box<LemmaViolation>),

    #[error("generator self-check failed: {0}")]
    Generator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit code used by the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::NotReconstructible(_) => 3,
            Error::Lemma(_) => 4,
            Error::Generator(_) => 5,
            _ => 2,
        }
    }
}

impl From<LemmaViolation> for Error {
    fn from(v: LemmaViolation) -> Self {
        Error::Lemma(Box::new(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReconstructFailure {
    /// The subgraph has a cycle shorter than `k + 2`.
    Girth { girth: usize, required: usize },
    /// Some base edge is stretched beyond `k`.
    Stretch { u: usize, v: usize },
}

impl std::fmt::Display for ReconstructFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReconstructFailure::Girth { girth, required } => {
                write!(f, "girth {girth} is below the required {required}")
            }
            ReconstructFailure::Stretch { u, v } => {
                write!(f, "base edge ({u}, {v}) is stretched beyond k")
            }
        }
    }
}
