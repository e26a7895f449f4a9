use thiserror::Error;

/// Errors raised while parsing a ring description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid ring: {0}")]
    Semantic(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("ring order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("operands belong to different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("element {element} does not belong to {ring}")]
    NotAnElement { element: String, ring: String },
    #[error("no closed form dispatched for {0}")]
    NoClosedForm(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
