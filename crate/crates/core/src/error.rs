use thiserror::Error;

/// Errors produced by graph construction, counting engines and analyses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({0}, {0}) is a loop; only simple graphs are supported")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("label {0} is assigned to more than one vertex")]
    DuplicateLabel(u32),
    #[error("label {0} is not present in the graph")]
    MissingLabel(u32),
    #[error("graph has no vertex labelled 0")]
    MissingRoot,
    #[error("seed graph must be connected")]
    SeedNotConnected,
    #[error("seed graph must be non-bipartite")]
    SeedBipartite,
    #[error("input graph must be connected")]
    NotConnected,
    #[error("host graph is empty")]
    EmptyHost,
    #[error("pattern has {n} vertices; the {engine} engine is limited to {limit}")]
    PatternTooLarge {
        n: usize,
        limit: usize,
        engine: &'static str,
    },
    #[error("host has {n} vertices; the {engine} engine is limited to {limit}")]
    HostTooLarge {
        n: usize,
        limit: usize,
        engine: &'static str,
    },
    #[error("a biconnected block with {block} vertices exceeds the exact max-cut limit of {limit}")]
    MaxCutTooLarge { block: usize, limit: usize },
    #[error("elimination reached scope width {width}, above the limit {limit}")]
    EliminationTooWide { width: usize, limit: usize },
    #[error("profile labels {requested:?} are not all retained by a doubling over {kept:?}")]
    LabelsNotRetained { requested: Vec<u32>, kept: Vec<u32> },
    #[error("invalid size {size} for standard graph kind {kind}")]
    InvalidStandardSize { kind: &'static str, size: usize },
    #[error("weight at ({0}, {1}) is outside [0, 1]")]
    WeightOutOfRange(usize, usize),
    #[error("weight matrix is not symmetric at ({0}, {1})")]
    WeightNotSymmetric(usize, usize),
    #[error("no crossing certified on this path: f-order does not reverse between the endpoints")]
    NoCrossing,
    #[error("bisection did not reach the requested tolerance within {steps} steps")]
    ToleranceNotReached { steps: usize },
    #[error("constructed graph {name} has parameters ({n}, {m}, {b}); expected ({en}, {em}, {eb})")]
    ParameterMismatch {
        name: String,
        n: usize,
        m: usize,
        b: usize,
        en: usize,
        em: usize,
        eb: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("eigendecomposition failed")]
    EigenFailed,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
