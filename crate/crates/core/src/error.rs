use thiserror::Error;

/// Failure modes shared by every crate in the workspace.
///
/// The variants line up with the command-line exit codes: parse errors are 1,
/// precondition violations 2, inconclusive searches 3. `Inconsistent` marks an
/// internal contradiction and should never surface on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn inconclusive(msg: impl Into<String>) -> Self {
        Error::Inconclusive(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::Precondition(_) => 2,
            Error::Inconclusive(_) => 3,
            Error::Inconsistent(_) => 4,
        }
    }
}
