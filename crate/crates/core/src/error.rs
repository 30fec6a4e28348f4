use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("tangential field needs distinct indices, got j = k = {0}")]
    EqualIndices(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("space trivial for n=1")]
    TrivialSpace,
    #[error("input is not {0}")]
    InvalidInput(String),
    #[error("tail budget exceeded: {0}")]
    Budget(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
