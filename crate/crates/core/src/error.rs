use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    ZeroDivisor,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },
    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
    #[error("arithmetic function outside the supported class: {0}")]
    NotInClass(String),
    #[error("parameters outside the theorem's range: {0}")]
    OutOfRange(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
