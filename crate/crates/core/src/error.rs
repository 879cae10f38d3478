use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error("edge {0}-{1} not present")]
    EdgeMissing(usize, usize),
    #[error("vertex sets differ: graph has order {graph}, added graph has order {added}")]
    VertexSetMismatch { graph: usize, added: usize },
    #[error("added graph contributes no new edge")]
    NoNewEdge,
    #[error("malformed graph6 string: {0}")]
    Graph6(String),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error("order {order} exceeds the supported limit {limit} for {what}")]
    OrderLimit {
        what: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("order {order} is too small for {what} (need at least {min})")]
    OrderTooSmall {
        what: &'static str,
        order: usize,
        min: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("source and target coincide at vertex {0}")]
    SameEndpoints(usize),
    #[error("only {found} inner-disjoint paths between {u} and {v}, {wanted} requested")]
    InsufficientPaths {
        u: usize,
        v: usize,
        wanted: usize,
        found: usize,
    },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("eigensolver did not converge for a {order}x{order} matrix after {iterations} iterations")]
    NoConvergence { order: usize, iterations: usize },
    #[error("vector length {found} does not match graph order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector is not orthogonal to the all-ones vector (normalized inner product {0:e})")]
    NotOrthogonal(f64),
    #[error("zero vector")]
    ZeroVector,
    #[error("vector is constant")]
    ConstantVector,
    #[error("vertex {vertex} has value {value} outside [{low}, {high}]")]
    OutsideRange {
        vertex: usize,
        value: f64,
        low: f64,
        high: f64,
    },
    #[error("values are not ordered: {0}")]
    Unordered(String),
    #[error("invalid family spec: {0}")]
    FamilySpec(String),
    #[error("internal defect: {0}")]
    Defect(String),
}
