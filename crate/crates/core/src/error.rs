use thiserror::Error;

/// Errors raised by the grooming library.
#[derive(Debug, Error)]
pub enum GroomingError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {node} out of range for a ring of {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self loop at node {0}")]
    SelfLoop(usize),

    #[error("invalid solution: {0}")]
    InvalidSolution(#[from] crate::ring::InvalidSolution),

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("no design exists for {0}")]
    DesignNonexistent(String),

    #[error("design search for {0} exhausted its budget; existence unknown")]
    DesignUnknown(String),

    #[error("gadget {gadget}: {reason}")]
    Gadget { gadget: String, reason: String },

    #[error("construction {name} does not apply: {reason}")]
    NotApplicable { name: String, reason: String },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = GroomingError> = std::result::Result<T, E>;
