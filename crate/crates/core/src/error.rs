use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed user input: bad vertex labels, level vectors, parameters.
    #[error("input error: {0}")]
    Input(String),

    /// An operation was applied outside its domain (non-face link, zero column, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive computation would exceed its configured cap.
    #[error("size error: {what} needs {required} steps, cap is {cap}; {hint}")]
    Size {
        what: String,
        required: u128,
        cap: u128,
        hint: String,
    },

    /// Two independent decision procedures disagreed.
    #[error("consistency error: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
