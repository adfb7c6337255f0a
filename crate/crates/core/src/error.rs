use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of an operation (`rho(0)`, `Sq^0`, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("element is not homogeneous (degrees {0} and {1})")]
    NonHomogeneous(u32, u32),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{name}` for space {space}")]
    UnknownGenerator { name: String, space: String },
    #[error("cache: {0}")]
    Cache(String),
}
