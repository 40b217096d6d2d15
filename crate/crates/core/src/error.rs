use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {label:?}")]
    SelfLoop { line: usize, label: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("node index {index} out of range for a graph of {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("partition is missing {} node(s): {}", .missing.len(), .missing.join(", "))]
    IncompletePartition { missing: Vec<String> },

    #[error("node {label:?} assigned to both {first:?} and {second:?}")]
    OverlappingPartition {
        label: String,
        first: String,
        second: String,
    },

    #[error("line {line}: unknown node {label:?}")]
    UnknownNode { line: usize, label: String },

    #[error("partition covers {got} nodes but the graph has {expected}")]
    PartitionSizeMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite score for {id:?}")]
    NonFiniteScore { id: String },

    #[error("generator produced an empty graph: {0}")]
    DegenerateGenerator(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::SelfLoop { .. } => "self_loop",
            Error::EmptyGraph => "empty_graph",
            Error::NodeOutOfRange { .. } => "node_out_of_range",
            Error::IncompletePartition { .. } => "incomplete_partition",
            Error::OverlappingPartition { .. } => "overlapping_partition",
            Error::UnknownNode { .. } => "unknown_node",
            Error::PartitionSizeMismatch { .. } => "partition_size_mismatch",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NonFiniteScore { .. } => "non_finite_score",
            Error::DegenerateGenerator(_) => "degenerate_generator",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}
