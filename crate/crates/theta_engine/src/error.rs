use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("NonConvergence: series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("DomainError: {0}")]
    DomainError(String),
    #[error("DegenerateProbe: |theta(0, tau)| = {0:e} is too small")]
    DegenerateProbe(f64),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("Overflow: integer overflow in {0}")]
    Overflow(&'static str),
}

impl ThetaError {
    pub fn name(&self) -> &'static str {
        match self {
            ThetaError::NonConvergence(_) => "NonConvergence",
            ThetaError::DomainError(_) => "DomainError",
            ThetaError::DegenerateProbe(_) => "DegenerateProbe",
            ThetaError::InvalidArgument(_) => "InvalidArgument",
            ThetaError::Overflow(_) => "Overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, ThetaError>;
