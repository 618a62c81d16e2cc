use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: out-of-range points, degree mismatches, bad partitions.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} exceeds cap {cap}")]
    Capacity { what: String, cap: u64 },

    /// The inputs are well formed but violate a construction's hypotheses.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two routes that must agree disagreed. Always an implementation defect.
    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("search failed: {0}")]
    SearchFailure(String),

    #[error("malformed group spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// Returns `Error::Consistency` unless `cond` holds.
macro_rules! ensure_consistent {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Consistency(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure_consistent;
