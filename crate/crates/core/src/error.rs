use alloc::string::String;
use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shape problems: mismatched variable lists, unknown variables, wrong arity.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error at line {line}, column {column} near {token:?}: {message}")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// A certified computation could not reach the requested accuracy.
    #[error("precision error: {0}")]
    Precision(String),
    /// The zero test ran out of samples and was not allowed to expand symbolically.
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
