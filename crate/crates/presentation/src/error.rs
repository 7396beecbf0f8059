use rm_core::RmError;
use theta_engine::ThetaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PresentationError {
    #[error("InvalidColumns: {0}")]
    InvalidColumns(String),
    #[error("RankDeficient: smallest relative singular value {0:e}")]
    RankDeficient(f64),
    #[error("OddLevel: l = {0} is odd")]
    OddLevel(i64),
    #[error("LeadingCoeffBelowThreshold: {0:e}")]
    LeadingCoeffBelowThreshold(f64),
    #[error("WrongNormalization: expected {expected}, got {got}")]
    WrongNormalization { expected: &'static str, got: &'static str },
    #[error("DegenerateNormalizer: |theta(l tau)| = {0:e}")]
    DegenerateNormalizer(f64),
    #[error("Overflow: {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Rm(#[from] RmError),
}

impl From<ThetaError> for PresentationError {
    fn from(e: ThetaError) -> Self {
        PresentationError::Rm(RmError::Theta(e))
    }
}

impl PresentationError {
    pub fn name(&self) -> &'static str {
        match self {
            PresentationError::InvalidColumns(_) => "InvalidColumns",
            PresentationError::RankDeficient(_) => "RankDeficient",
            PresentationError::OddLevel(_) => "OddLevel",
            PresentationError::LeadingCoeffBelowThreshold(_) => "LeadingCoeffBelowThreshold",
            PresentationError::WrongNormalization { .. } => "WrongNormalization",
            PresentationError::DegenerateNormalizer(_) => "DegenerateNormalizer",
            PresentationError::Overflow(_) => "Overflow",
            PresentationError::Rm(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, PresentationError>;
