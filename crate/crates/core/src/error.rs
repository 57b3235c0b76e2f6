use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inequality has all coefficients zero")]
    DegenerateInequality,
    #[error("divisor classes live on different surfaces")]
    SurfaceMismatch,
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("polarization is not ample: {0}")]
    NotAmplePolarization(String),
    #[error("polarization has zero self-intersection")]
    DegeneratePolarization,
    #[error("quotient slope denominator vanishes")]
    DegenerateQuotientSlope,
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
