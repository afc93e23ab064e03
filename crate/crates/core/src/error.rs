use thiserror::Error;

/// Errors raised by the special-function kernels and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypergeometric series does not terminate: no upper parameter is a nonpositive integer")]
    NonTerminating,

    #[error("lower parameter {index} hits a pole at term {step} before the series terminates")]
    LowerPole { index: usize, step: usize },

    #[error("argument {0} is outside the domain of the function")]
    Domain(String),

    #[error("parameter {0} is not finite")]
    NotFinite(f64),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("wavefunction routes disagree at level {level}, column {column}: matrix {matrix}, direct {direct}")]
    PathDisagreement { level: usize, column: usize, matrix: f64, direct: f64 },

    #[error("fixture parse error on line {line}: {msg}")]
    Fixture { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
