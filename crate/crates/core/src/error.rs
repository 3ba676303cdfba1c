use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tree has a vertex with exactly one child")]
    OutdegreeOne,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("leaf set is empty")]
    EmptyLeafSet,

    #[error("leaf {0} selected twice")]
    DuplicateLeaf(usize),

    #[error("leaf index {index} out of range for a tree with {leaves} leaves")]
    LeafOutOfRange { index: usize, leaves: usize },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("{what} limited to n <= {cap}, got {n}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("tree must have outdegree at most {max}, found {found}")]
    Arity { max: usize, found: usize },

    #[error("pattern {0} is not eligible for the generalized binary recursion")]
    Ineligible(String),

    #[error("unknown pattern {0:?}")]
    UnknownPattern(String),

    #[error("n = {n} is below the pattern size {pattern}")]
    BelowPatternSize { n: usize, pattern: usize },

    #[error("count overflow at n = {0}")]
    Overflow(usize),

    #[error("cache file {path}: {message}")]
    CacheCorrupt { path: PathBuf, message: String },

    #[error("upper bound increased from n = {earlier} to n = {later}: {earlier_value} < {later_value}")]
    NotMonotone {
        earlier: usize,
        later: usize,
        earlier_value: String,
        later_value: String,
    },

    #[error("optimisation did not converge: gradient residual {residual:e}")]
    NoConvergence { residual: f64 },

    #[error("candidate carries {bits} bits, need at least {needed}")]
    InsufficientPrecision { bits: u32, needed: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
