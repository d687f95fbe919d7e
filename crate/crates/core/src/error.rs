use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at evaluation point: denominator {factor} vanishes at q = {q}")]
    Pole { factor: String, q: f64 },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("resource cap exceeded: {what} = {requested} > {cap}")]
    ResourceCap {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("index out of range: {index} (valid range 0..{bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("truncation overflow: result components {overflow:?} exceed weight {n_max}")]
    TruncationOverflow {
        n_max: usize,
        overflow: Vec<(usize, usize)>,
    },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("syntax error at {start}..{end}: {message}")]
    Syntax { message: String, start: usize, end: usize },

    #[error("type error at {start}..{end}: {message}")]
    Type { message: String, start: usize, end: usize },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl Error {
    /// CLI exit code: 3 for resource caps, 2 for bad parameters or input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap { .. } => 3,
            Error::InvalidParams(_) | Error::Syntax { .. } | Error::Type { .. } => 2,
            _ => 1,
        }
    }
}
