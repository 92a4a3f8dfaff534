use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coordinates {coords:?} are not admissible for a map into Λ_{n}: {reason}")]
    Admissibility { n: usize, coords: Vec<i64>, reason: String },
    #[error("cannot compose: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a chain complex or chain map: {0}")]
    NotChain(String),
    #[error("poset error: {0}")]
    Poset(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("support violation at {at:?}: {reason}")]
    Support { at: Vec<i64>, reason: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
