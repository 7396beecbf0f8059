use presentation::PresentationError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("CombinatorialCap: {count} minors exceed the cap {cap}")]
    CombinatorialCap { count: u128, cap: u128 },
    #[error("NotProjective: {0}")]
    NotProjective(String),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
}

impl GeomError {
    pub fn name(&self) -> &'static str {
        match self {
            GeomError::CombinatorialCap { .. } => "CombinatorialCap",
            GeomError::NotProjective(_) => "NotProjective",
            GeomError::InvalidArgument(_) => "InvalidArgument",
            GeomError::Presentation(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
