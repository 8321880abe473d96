use thiserror::Error;

/// Errors raised by towerkit operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("maps cannot be composed: target and source differ")]
    Mismatch,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("action has inversions")]
    Inversions,
    #[error("source complex is not certified one-connected")]
    NotOneConnected,
    #[error("cover is not H-regular")]
    NotRegular,
    #[error("word oracle could not decide whether `{0}` is trivial")]
    OracleUnknown(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error reports a budget or oracle limit rather than bad input.
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::Undecided(_) | Error::OracleUnknown(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
