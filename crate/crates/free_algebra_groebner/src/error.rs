use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroebnerError {
    #[error("TruncationExceeded: degree {degree} > {limit}")]
    TruncationExceeded { degree: usize, limit: usize },
    #[error("InvalidWord: {0}")]
    InvalidWord(String),
    #[error("ZeroPolynomial: {0}")]
    ZeroPolynomial(String),
}

impl GroebnerError {
    pub fn name(&self) -> &'static str {
        match self {
            GroebnerError::TruncationExceeded { .. } => "TruncationExceeded",
            GroebnerError::InvalidWord(_) => "InvalidWord",
            GroebnerError::ZeroPolynomial(_) => "ZeroPolynomial",
        }
    }
}

pub type Result<T> = std::result::Result<T, GroebnerError>;
