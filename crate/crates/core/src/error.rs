use thiserror::Error;

use crate::report::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed Ω-table: {0}")]
    MalformedTable(String),

    #[error("table is not an extended triassociative semigroup: {0}")]
    NotEts(Box<AxiomReport>),

    #[error("Ω element {elem} out of range for a table of size {size}")]
    OmegaOutOfRange { elem: usize, size: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid tree: {}", .0.join("; "))]
    InvalidTree(Vec<String>),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("{what} exceeds the resource guard ({value} > {limit})")]
    ResourceGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("axioms not satisfied: {0}")]
    Unverified(Box<AxiomReport>),

    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
