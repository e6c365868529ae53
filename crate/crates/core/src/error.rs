use thiserror::Error;

use crate::diagram::NotationError;
use crate::series::SeriesError;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),

    #[error(transparent)]
    Notation(#[from] NotationError),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("irreducible shadow polynomial for genus {genus} is not available (built-in for genus 1 and 2 only)")]
    MissingIrreducible { genus: u32 },

    #[error("{what} of {requested} exceeds the configured ceiling of {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        requested: usize,
        ceiling: usize,
    },

    #[error("no structures of length {n} and genus {genus} satisfy the constraints")]
    EmptyFamily { n: usize, genus: u32 },

    #[error("discriminant has no positive real root in (0, 1) for lambda={lambda}, r={r}")]
    NoRoot { lambda: u32, r: u32 },

    #[error("degenerate singularity: the x-partial of the discriminant vanishes at the root")]
    Degenerate,

    #[error("component is not irreducible after projection: {0}")]
    NotIrreducible(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
