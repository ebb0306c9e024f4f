use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A domain precondition was violated (bad parameter, malformed interval, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A template file or index problem.
    #[error("template error: {0}")]
    Template(String),

    /// Signature configuration failed its load-time self test.
    #[error("signature config error: {0}")]
    Signature(String),

    /// Transport-level failure talking to a chat endpoint.
    #[error("transport error: {0}")]
    Transport(String),

    /// Replay transport had no cached reply for a request.
    #[error("replay cache miss: {0}")]
    CacheMiss(String),

    /// Live mode requires an API key in the environment.
    #[error("missing credential: {0}")]
    MissingCredential(String),

    /// A judge reply could not be parsed into the expected schema.
    #[error("malformed verdict: {0}")]
    Verdict(String),

    /// A cluster report failed count conservation.
    #[error("invalid cluster report: {0}")]
    ClusterReport(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
