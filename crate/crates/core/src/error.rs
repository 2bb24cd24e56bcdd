use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// `Law` marks a verified mathematical violation found while building a
/// structure (a poset relation that is not antisymmetric, a non-commutative
/// addition table, ...). Everything else is a problem with the request itself.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("{law} violated: {witness}")]
    Law { law: String, witness: String },

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn law(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Law { law: law.into(), witness: witness.into() }
    }

    /// True when the error reports a mathematical failure rather than a
    /// malformed request.
    pub fn is_mathematical(&self) -> bool {
        matches!(self, Error::Law { .. } | Error::Precondition(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
