use thiserror::Error;

/// Errors raised by surface construction, class canonicalization and the
/// complex and map operations built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no triangulated model for S_({genus},{boundary}): {reason}")]
    UnsupportedSurface {
        genus: usize,
        boundary: usize,
        reason: &'static str,
    },
    #[error("path is not a consistent crossing sequence: {0}")]
    MalformedPath(String),
    #[error("coordinates are not realizable: {0}")]
    NotRealizable(String),
    #[error("class is not simple")]
    NotSimple,
    #[error("input realizes more than one component")]
    Disconnected,
    #[error("class is inessential")]
    Inessential,
    #[error("curve system has crossings")]
    Crossing,
    #[error("vertices must be distinct")]
    NotDistinct,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("not a vertex of the {kind} complex: {detail}")]
    NotAVertex { kind: String, detail: String },
    #[error("pants is not peripheral")]
    NotPeripheral,
    #[error("surface is not admissible: {0}")]
    Inadmissible(String),
    #[error("path is invalid: {0}")]
    InvalidPath(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
