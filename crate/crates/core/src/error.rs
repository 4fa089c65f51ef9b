use thiserror::Error;

/// Errors raised by group construction and the structural operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, cap: usize },

    #[error("element is not a member of the group")]
    ElementNotInGroup,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl GroupError {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        GroupError::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
