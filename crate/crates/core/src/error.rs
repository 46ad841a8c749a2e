use thiserror::Error;

use crate::algebra::BigRat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroPolynomialDivisor,

    #[error("division by zero rational function")]
    ZeroRationalDivisor,

    #[error("pole at x = {at}")]
    Pole { at: BigRat },

    #[error("g is not a kernel logarithmic derivative (remainder {remainder})")]
    NotKernelLogDerivative { remainder: String },

    #[error("inverse undefined at λ=0")]
    InverseAtZeroEigenvalue,

    #[error("operator is not of Euler type: coefficient of D^{power} is {coefficient}")]
    NotEulerType { power: usize, coefficient: String },

    #[error("expected an operator of order {expected}, found order {found}")]
    WrongOrder { expected: usize, found: usize },

    #[error("operator must have order at least 1")]
    ZeroOrder,

    #[error("degenerate step: f + β vanishes identically")]
    DegenerateStep,

    #[error("degenerate inverse step: f̂ − β̂ vanishes identically")]
    DegenerateInverse,

    #[error("λ = {0} has no rational square root")]
    IrrationalSqrt(BigRat),

    #[error("λ must be positive, got {0}")]
    NonPositiveEigenvalue(BigRat),

    #[error("continued fraction has a zero denominator at level {level}")]
    ContinuedFractionPole { level: usize },

    #[error("x must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("exponent must be a non-negative integer for operators, got {0}")]
    BadOperatorExponent(String),

    #[error("exponent must be an integer constant, got {0}")]
    NonIntegerExponent(String),

    #[error("cannot divide by an operator")]
    DivideByOperator,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
