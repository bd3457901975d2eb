use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(String, String),

    #[error("self-loop on node {0}")]
    SelfLoop(String),

    #[error("edge {from} -- {to} has non-positive weight {weight}")]
    NonPositiveWeight {
        from: String,
        to: String,
        weight: f64,
    },

    #[error("node labels must be non-empty")]
    EmptyLabel,

    #[error("node {0} is isolated (zero degree)")]
    IsolatedNode(String),

    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unstable time step: {0}")]
    UnstableStep(String),

    #[error("norm drifted to {norm} at step {step}")]
    NormDrift { step: usize, norm: f64 },

    #[error("symmetric eigensolver failed: {0}")]
    EigensolverFailure(String),

    #[error("unknown node {0}")]
    UnknownNode(String),

    #[error("duplicate layer name {0}")]
    DuplicateLayer(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("k = {k} exceeds node count {n}")]
    KTooLarge { k: usize, n: usize },

    #[error("occupation vectors are defined over different node sets")]
    NodeSetMismatch,

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name, used in CLI error records and FFI status mapping.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::SelfLoop(_) => "SelfLoop",
            Error::NonPositiveWeight { .. } => "NonPositiveWeight",
            Error::EmptyLabel => "EmptyLabel",
            Error::IsolatedNode(_) => "IsolatedNode",
            Error::DisconnectedGraph { .. } => "DisconnectedGraph",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnstableStep(_) => "UnstableStep",
            Error::NormDrift { .. } => "NormDrift",
            Error::EigensolverFailure(_) => "EigensolverFailure",
            Error::UnknownNode(_) => "UnknownNode",
            Error::DuplicateLayer(_) => "DuplicateLayer",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::KTooLarge { .. } => "KTooLarge",
            Error::NodeSetMismatch => "NodeSetMismatch",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
