use thiserror::Error;

use crate::presentation::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter tuple: {0}")]
    InvalidPTuple(String),
    #[error("invalid presentation: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no fixed limit orbit is reached by a connector")]
    NoFixedWitness,
    #[error("the system has a continuous 2-coloring, so no basis element lies below it")]
    Colorable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
