use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised while building or parsing graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge endpoint {v} out of range for {n} vertices")]
    OutOfRange { v: Vertex, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("color vector has length {got}, expected {expected}")]
    ColorLength { got: usize, expected: usize },
    #[error("vertex sets are not disjoint")]
    Overlap,
}

/// Errors raised by trigraph operations and sequence replay.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("step {step}: part {part} is not live")]
    DeadPart { step: usize, part: usize },
    #[error("step {step}: cannot merge part {part} with itself")]
    SamePart { step: usize, part: usize },
    #[error("malformed sequence line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("contraction strings differ")]
    Mismatch,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("graph has twin-width greater than 1")]
    NotTwinWidthOne,
    #[error("vertex {0} out of range")]
    BadVertex(Vertex),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("graph is disconnected; decompose it as a parallel node")]
    Disconnected,
    #[error("graph complement is disconnected; decompose it as a series node")]
    CoDisconnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("a maximal module has twin-width greater than 1")]
    ModuleNotTwinWidthOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WlError {
    #[error("{tuples} tuples exceed the refinement budget of {limit}; lower k or shrink the graph")]
    Budget { tuples: u128, limit: u128 },
    #[error("dimension must be at least {min}, got {got}")]
    Dimension { got: usize, min: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("bipartite view is not a partial half-graph")]
    NotPartialHalfGraph,
    #[error("{n} vertices exceed the rank-connectivity limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("sequence has width {0}, expected at most 1")]
    WidthTooLarge(usize),
    #[error("vertex sets are not disjoint")]
    Overlap,
    #[error(transparent)]
    Contraction(#[from] ContractionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("base graph is not 3-regular (vertex {0})")]
    NotCubic(Vertex),
    #[error("base graph is not connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment parameters: {0}")]
    InvalidSpec(String),
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error(transparent)]
    Wl(#[from] WlError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("cannot write counterexample bundle: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}
