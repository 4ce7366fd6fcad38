use thiserror::Error;

use crate::domain::VarId;
use crate::state::Status;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty domain [{lo}, {hi}]")]
    EmptyDomain { lo: i64, hi: i64 },

    #[error("operation requires an active state, found {0:?}")]
    InactiveState(Status),

    #[error("variable {0} is out of range for this problem")]
    UnknownVariable(VarId),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("invalid model parameters for {model}: {reason}")]
    InvalidModel { model: String, reason: String },

    #[error("unknown model `{name}` (known: {known})")]
    UnknownModel { name: String, known: String },

    #[error("unknown strategy `{name}` (known: {known})")]
    UnknownStrategy { name: String, known: String },

    #[error("{0}")]
    Usage(String),

    #[error("search aborted after exceeding the node budget of {0}")]
    NodeBudget(u64),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
