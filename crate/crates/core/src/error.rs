use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid {field}: {message} (constraint: {constraint})")]
    Validation { field: String, constraint: String, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator is numerically zero ({magnitude:e})")]
    DivisionByNearZero { magnitude: f64 },
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource { what: String, needed: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("weight is not regular: {0}")]
    NonRegular(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl QError {
    pub fn validation(field: &str, constraint: &str, message: impl Into<String>) -> Self {
        QError::Validation { field: field.to_string(), constraint: constraint.to_string(), message: message.into() }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, QError::Resource { .. })
    }
}

pub type Result<T> = std::result::Result<T, QError>;
