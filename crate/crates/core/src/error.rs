use thiserror::Error;

use crate::channel::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("variable `{0}` appears in more than one argument set")]
    OverlappingSets(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("conditioning event has zero probability")]
    DegenerateEvent,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("channel document has {} violation(s): {}", .0.len(), first_violation(.0))]
    InvalidSpec(Vec<Violation>),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("degenerate scheme: {0}")]
    DegenerateScheme(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn first_violation(v: &[Violation]) -> String {
    v.first().map(|x| x.to_string()).unwrap_or_default()
}
