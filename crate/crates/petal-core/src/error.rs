use thiserror::Error;

#[derive(Debug, Error)]
pub enum PetalError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("weight assignment does not cover edge {0}")]
    UncoveredEdge(usize),
    #[error("assignment is not constant on edge classes")]
    NonClassConstant,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("eigenvalue one of the weight matrix is not simple")]
    MultipleUnitEigenvalues,
    #[error("{0} is not an eigenvalue of both quotient blocks")]
    NoSuchEigenvalue(f64),
    #[error("closed-form equation vanishes identically on the scan grid")]
    DegenerateEquation,
    #[error("initial vector is constant; normalized distance undefined")]
    ConstantInitialVector,
    #[error("trajectory tail below numerical floor before the rate window")]
    Underflow,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, PetalError>;
