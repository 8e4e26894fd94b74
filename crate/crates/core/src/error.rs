use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A value does not fit the 128-bit working integer.
    #[error("overflow: {0}")]
    Overflow(String),

    /// `C/γ` was requested for a polynomial whose `γ` is zero.
    #[error("ratio C/gamma undefined: {0}")]
    UndefinedRatio(String),

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache format: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
