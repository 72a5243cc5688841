use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element cap of {cap} exceeded while enumerating {name}")]
    CapExceeded { name: String, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a proper pair: {0}")]
    BadPair(String),
    #[error("bad quotient: {0}")]
    BadQuotient(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("unknown group '{0}'")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{name}: declared order {expected}, enumerated {got}")]
    OrderMismatch {
        name: String,
        expected: u64,
        got: u64,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
