use presentation::PresentationError;
use rm_core::RmError;
use theta_engine::ThetaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("RationalInput: {0} is rational")]
    RationalInput(String),
    #[error("NotCuspType: no exponential decay at the cusp {0}")]
    NotCuspType(String),
    #[error("QuadratureFailure: {0}")]
    QuadratureFailure(String),
    #[error("OddLevel: l = {0} is odd")]
    OddLevel(i64),
    #[error("OddWeight: w = {0} is odd")]
    OddWeight(i64),
    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),
    #[error("NotInGroup: {0}")]
    NotInGroup(String),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("Overflow: {0}")]
    Overflow(String),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
}

impl From<RmError> for SymbolError {
    fn from(e: RmError) -> Self {
        SymbolError::Presentation(PresentationError::Rm(e))
    }
}

impl From<ThetaError> for SymbolError {
    fn from(e: ThetaError) -> Self {
        SymbolError::Presentation(PresentationError::Rm(RmError::Theta(e)))
    }
}

impl SymbolError {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolError::RationalInput(_) => "RationalInput",
            SymbolError::NotCuspType(_) => "NotCuspType",
            SymbolError::QuadratureFailure(_) => "QuadratureFailure",
            SymbolError::OddLevel(_) => "OddLevel",
            SymbolError::OddWeight(_) => "OddWeight",
            SymbolError::InvalidGroup(_) => "InvalidGroup",
            SymbolError::NotInGroup(_) => "NotInGroup",
            SymbolError::InvalidArgument(_) => "InvalidArgument",
            SymbolError::Overflow(_) => "Overflow",
            SymbolError::Presentation(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SymbolError>;
