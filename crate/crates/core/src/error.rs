use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("reducible minimal polynomial {0}")]
    ReducibleMinpoly(String),
    #[error("polynomial ring mismatch")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("homogenization degree {degree} below total degree {total}")]
    DegreeTooSmall { degree: u32, total: u32 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a perfect square")]
    NotAPerfectSquare,
    #[error("branch sextic is not tangent to the double line")]
    TangencyFailure,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("splitting field of degree > 2 needed; residual minimal polynomial {0}")]
    SplittingDegreeExceeded(String),
    #[error("step cap of {0} exceeded")]
    StepCapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
