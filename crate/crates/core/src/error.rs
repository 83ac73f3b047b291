use thiserror::Error;

/// Errors reported by the solver library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("weight conflict while gluing: {0}")]
    WeightConflict(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("instance exceeds the size guard: {0}")]
    SizeGuard(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
