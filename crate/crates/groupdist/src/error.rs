use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("tables have different orders ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("order {0} is not supported: {1}")]
    UnsupportedOrder(usize, String),
    #[error("action is not a homomorphism into Aut(normal)")]
    ActionNotHomomorphism,
    #[error("action image is not an automorphism of the normal factor")]
    ActionNotAutomorphism,
    #[error("map is not total")]
    MapNotTotal,
    #[error("map is not bijective")]
    MapNotBijective,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("graph too large for canonical labeling (v={0})")]
    TooLarge(usize),
    #[error("missing mu value for (l={0}, v={1})")]
    MissingMu(usize, usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
