use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("singular construction: {0}")]
    Singular(String),
    #[error("no feasible start produced a finite objective")]
    Infeasible,
    #[error("no sign change on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },
    #[error("empty solution interval")]
    EmptyInterval,
    #[error("problem too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
