//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by hypergraph construction, operators, solvers and loaders.
#[derive(Debug, Error)]
pub enum Error {
    /// A hyperedge with fewer than two members (empty or singleton).
    #[error("hyperedge {index} has {size} member(s); every hyperedge must join at least 2 vertices")]
    EdgeTooSmall { index: usize, size: usize },

    #[error("hyperedge {index} has non-positive weight {weight}")]
    NonpositiveWeight { index: usize, weight: f64 },

    #[error("got {got} weights for {expected} hyperedges")]
    WeightCountMismatch { got: usize, expected: usize },

    #[error("{what} index {index} out of range (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("{what} has length {got}, expected {expected}")]
    SizeMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("p = {0} is not supported here; p must be >= 1")]
    InvalidP(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("linear solve broke down: {0}")]
    SingularSystem(String),

    #[error("vertex {vertex} is labeled with unknown class {class} ({num_classes} classes declared)")]
    UnknownClass {
        vertex: usize,
        class: usize,
        num_classes: usize,
    },

    #[error("evaluation mask selects no vertices")]
    EmptyEvalSet,

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{path}:{line}: attribute '{column}' must be 0 or 1, got '{value}'")]
    NonBooleanAttribute {
        path: String,
        line: usize,
        column: &'static str,
        value: String,
    },

    #[error("requested a subset of {requested} postings but only {available} are available")]
    SubsetTooLarge { requested: usize, available: usize },

    #[error("unsupported hypergraph format '{found}', expected '{expected}'")]
    FormatVersionMismatch {
        found: String,
        expected: &'static str,
    },

    #[error("unknown solver '{name}'; available: {available}")]
    UnknownSolver { name: String, available: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
