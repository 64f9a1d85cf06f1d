use thiserror::Error;

use crate::icp::Node;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gap vector must contain at least one entry")]
    EmptyGaps,
    #[error("gap a_{index} is negative ({value})")]
    NegativeGap { index: usize, value: i64 },
    #[error("chunk length L must be a positive integer, got {0}")]
    InvalidChunkLength(i64),
    #[error("repeat count l must be positive")]
    ZeroRepeat,
    #[error("two-column coloring needs i = 2 and (a1 + a2 + 2) | K: {0}")]
    TwoColumnPrecondition(String),
    #[error("coloring does not cover node {0}")]
    UncoveredNode(Node),
    #[error("color {color} of node {node} is outside 1..={colors}")]
    ColorOutOfRange { node: Node, color: usize, colors: usize },
    #[error("coloring is not proper: {0} violating pairs")]
    ImproperColoring(usize),
    #[error("{0} is not a prime field order")]
    NotPrime(u64),
    #[error("field order {order} is too small for {colors} colors (need order >= colors)")]
    FieldTooSmall { order: u64, colors: usize },
    #[error("message vector has {got} entries, graph has {expected} nodes")]
    MessageCount { expected: usize, got: usize },
    #[error("node {0} is marked as side information but its value is unavailable")]
    MissingSideInformation(Node),
    #[error("node {node} has {unknown} unknown color aggregates, scheme rank is {rank}")]
    TooManyUnknowns { node: Node, unknown: usize, rank: usize },
    #[error("code rank {rank} outside {needed}..={colors}")]
    RankOutOfRange { rank: usize, needed: usize, colors: usize },
    #[error("singular MDS submatrix while decoding node {0}")]
    SingularSubmatrix(Node),
    #[error("instance has {nodes} nodes, above the brute-force cap of {cap}")]
    OverNodeCap { nodes: usize, cap: usize },
    #[error("memory multiplier w = {w} outside [1, {max}]")]
    InvalidMultiplier { w: usize, max: usize },
    #[error("invalid network parameters: {0}")]
    InvalidNetwork(String),
    #[error("memory M = {0} exceeds N / L")]
    MemoryOutOfRange(String),
    #[error("closed form needs 2L + 1 >= K (K = {k}, L = {l})")]
    ClosedFormRegime { k: usize, l: usize },
    #[error("expected {expected} demands, got {got}")]
    DemandLength { expected: usize, got: usize },
    #[error("demand {demand} of user {user} is outside 1..={files}")]
    DemandOutOfRange { user: usize, demand: usize, files: usize },
    #[error("invalid side-information graph: {0}")]
    InvalidGraph(String),
}
