use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("subset is not contained in the generating set")]
    NotASubset,
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("special subgroup on {{{0}}} is of infinite type")]
    InfiniteType(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed graph of groups: {0}")]
    MalformedGog(String),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("invalid caps: {0}")]
    InvalidCaps(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>) -> Self {
        Error::ResourceBound(what.into())
    }

    /// True for errors caused by a configured cap rather than by bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::ResourceBound(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
