use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("a shore must be a nonempty proper subset of the vertex set")]
    ImproperShore,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge {edge} would be subdivided by an odd number ({count}) of vertices")]
    OddBisubdivision { edge: EdgeId, count: usize },
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("vertex {vertex} cannot be bicontracted: {why}")]
    NotBicontractible { vertex: usize, why: &'static str },
    #[error("forced edges {0} and {1} share a vertex")]
    ForcedEdgesOverlap(EdgeId, EdgeId),
    #[error("graph is not matching covered: {0}")]
    NotMatchingCovered(String),
    #[error("graph has odd order {0}")]
    OddOrder(usize),
    #[error("{0:?} is not a barrier")]
    NotABarrier(Vec<usize>),
    #[error("{{{0}, {1}}} is not a 2-separation")]
    NotATwoSeparation(usize, usize),
    #[error("cut is not a nontrivial tight cut: {0}")]
    InvalidCut(String),
    #[error("vertex {0} given twice where two distinct vertices are needed")]
    SameVertex(usize),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("edges {0} and {1} are not adjacent")]
    NotAdjacent(EdgeId, EdgeId),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex {0} is not an isolated vertex of G - B")]
    NotIsolated(usize),
    #[error("graph of order {order} exceeds the search cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("malformed certificate: {0}")]
    Certificate(String),
}
