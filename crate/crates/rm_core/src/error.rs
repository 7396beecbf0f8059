use theta_engine::ThetaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RmError {
    #[error("NotSL2: det {0} != 1")]
    NotSL2(i128),
    #[error("NotHyperbolic: trace {0} <= 2")]
    NotHyperbolic(i128),
    #[error("DegreeTooSmall: c = {c} < a + d + 2 = {need}")]
    DegreeTooSmall { c: i64, need: i128 },
    #[error("IndexOutOfRange: {0}")]
    IndexOutOfRange(String),
    #[error("RankDeficient: smallest relative singular value {0:e}")]
    RankDeficient(f64),
    #[error("{0}")]
    Theta(#[from] ThetaError),
}

impl RmError {
    pub fn name(&self) -> &'static str {
        match self {
            RmError::NotSL2(_) => "NotSL2",
            RmError::NotHyperbolic(_) => "NotHyperbolic",
            RmError::DegreeTooSmall { .. } => "DegreeTooSmall",
            RmError::IndexOutOfRange(_) => "IndexOutOfRange",
            RmError::RankDeficient(_) => "RankDeficient",
            RmError::Theta(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, RmError>;
