use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown affine type label `{0}`")]
    UnknownLabel(String),
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value has a pole at qs = 0")]
    NotRegular,
    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("element shape does not match the type: {0}")]
    VariantMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("operation requires a different type: {0}")]
    WrongType(String),
    #[error("outside the domain of the operation: {0}")]
    DomainViolation(String),
    #[error("crystal is not regular along color {0}")]
    NonRegularCrystal(usize),
    #[error("singular change of basis in weight space {0}")]
    SingularChangeOfBasis(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
