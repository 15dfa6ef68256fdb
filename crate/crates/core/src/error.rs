use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spin must be a positive half-integer (2s >= 1), got 2s = {0}")]
    InvalidSpin(u32),
    #[error("cannot parse spin quantum number from {0:?}")]
    SpinParse(String),
    #[error("exchange coupling must be non-negative, got J = {0}")]
    NegativeCoupling(f64),
    #[error("bath temperature must be strictly positive, got T = {0}")]
    NonPositiveTemperature(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("efficiency bound undefined for 4J >= B1 (J = {j}, B1 = {b1})")]
    BoundDomain { j: f64, b1: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("reduced state is not diagonal in the local z-basis (off-diagonal {0:e})")]
    NotDiagonal(f64),
    #[error("Jacobi diagonalization did not converge within {0} sweeps")]
    NotConverged(usize),
    #[error("unknown figure kind {0:?}")]
    UnknownFigure(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
