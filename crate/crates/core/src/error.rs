use thiserror::Error;

/// Errors produced by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a free algebra profile: generator count a_{degree} = {value} is negative")]
    NotFreeProfile { degree: usize, value: String },

    #[error("unsupported particle type: {0}")]
    UnsupportedSpec(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
