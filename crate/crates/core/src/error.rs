use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("tropical division by infinity")]
    DivisionByInfinity,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
