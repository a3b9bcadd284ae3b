use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown node {0}")]
    UnknownNode(String),

    #[error("duplicate node id {0}")]
    DuplicateNode(String),

    #[error("instance has no nodes")]
    EmptyInstance,

    #[error("node count {names} does not match slice specification count {specs}")]
    ShapeMismatch { names: usize, specs: usize },

    #[error("set is not a quorum")]
    NotAQuorum,

    #[error("instance has no quorum")]
    NoQuorum,

    #[error("{0} requires the plain encoding; expand nested declarations first")]
    NestedEncoding(&'static str),

    #[error(
        "node {node} has {count} slices of cardinality {cardinality}, more than the bound r = {bound}"
    )]
    MultiplicityExceeded {
        node: String,
        cardinality: usize,
        count: usize,
        bound: usize,
    },

    #[error("size guard: brute force limited to n \u{2264} {limit} (instance has {n} nodes)")]
    SizeGuard { n: usize, limit: usize },

    #[error("expansion exceeds cap of {cap} sets")]
    ExpansionCap { cap: usize },

    #[error("infeasible profile: {0}")]
    InfeasibleProfile(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
