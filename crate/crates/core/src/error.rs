use alloc::string::String;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameter: {0}")]
    InvalidField(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dimension or field mismatch: {0}")]
    Mismatch(String),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: String, cap: u64 },
    #[error("budget exhausted: {0}")]
    BudgetExceeded(String),
    #[error("malformed literal: {0}")]
    Parse(String),
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),
    #[error("unknown bound row: {0}")]
    UnknownRow(String),
    #[error("corrupt table cache: {0}")]
    CorruptCache(String),
}
