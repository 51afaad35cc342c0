use thiserror::Error;

/// Errors raised by the query engine and its file-format readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("query syntax error at offset {offset}: {message}")]
    QuerySyntax { offset: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("walks do not concatenate: first ends at {first_target}, second starts at {second_source}")]
    EndpointMismatch {
        first_target: String,
        second_source: String,
    },

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ill-defined request: {0}")]
    IllDefined(String),

    #[error("coding condition ({condition}) violated: {detail}")]
    CodingViolation { condition: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
