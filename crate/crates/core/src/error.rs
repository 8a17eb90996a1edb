use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("invalid affine type: {0}")]
    InvalidType(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("energy function is inconsistent: {0}")]
    EnergyInconsistent(String),
    #[error("energy function is undetermined: {0}")]
    EnergyUndetermined(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CrystalError>;
