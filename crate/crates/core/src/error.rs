use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
