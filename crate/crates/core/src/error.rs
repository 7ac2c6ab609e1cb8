use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
    #[error("edge {edge:?} must have exactly {d} distinct vertices")]
    EdgeArity { edge: Vec<usize>, d: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("cuph needs at least {d} parts, got {k}")]
    TooFewParts { d: usize, k: usize },
    #[error("cuph part {0} is empty")]
    EmptyPart(usize),
    #[error("cuph parts overlap in vertex {0}")]
    OverlappingParts(usize),
    #[error("family CB requires exactly {d} parts, got {k}")]
    NotBipartiteFamily { d: usize, k: usize },
    #[error("weights must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("item uniformity {got} does not match host uniformity {expected}")]
    UniformityMismatch { expected: usize, got: usize },
    #[error("{what} requires a graph (d = 2), got d = {d}")]
    NotAGraph { what: &'static str, d: usize },
    #[error("parameter k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("density is undefined on an empty vertex set")]
    EmptyVertexSet,
    #[error("orientation does not match the host edges: {0}")]
    BadOrientation(String),
    #[error("class partition invalid: {0}")]
    BadClassPartition(String),
    #[error("edge split invalid: {0}")]
    BadSplit(String),
    #[error("probability p must satisfy 0 < p < 1, got {0}")]
    ProbabilityRange(String),
    #[error("edge probability must satisfy 0 <= p <= 1, got {0}")]
    EdgeProbabilityRange(String),
    #[error("degree condition fails: vertex {vertex} has degree {degree} < n - m = {required}")]
    DegreeCondition { vertex: usize, degree: usize, required: usize },
    #[error("codegree condition fails: set {set:?} lies in {count} edges < n - m = {required}")]
    CodegreeCondition { set: Vec<usize>, count: usize, required: usize },
    #[error("enumeration limit exceeded: {what} has {actual} vertices, limit {limit}")]
    LimitExceeded { what: &'static str, actual: usize, limit: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("need n >= d, got n = {n}, d = {d}")]
    TooFewVertices { n: usize, d: usize },
    #[error("exact enumeration requires an exact scalar type")]
    InexactScalar,
}

pub type Result<T> = std::result::Result<T, Error>;
