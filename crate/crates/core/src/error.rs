use thiserror::Error;

/// Structural and validation errors surfaced by the library API.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dim { expected: usize, got: usize },

    #[error("operands live in different modules")]
    HomeMismatch,

    #[error("operands belong to different systems")]
    SystemMismatch,

    #[error("invalid action: {kind}; witness {witness}; residual {residual:.3e}")]
    InvalidAction {
        kind: &'static str,
        witness: String,
        residual: f64,
    },

    #[error("empty direct sum rejected")]
    EmptySum,

    #[error("trivial module rejected")]
    TrivialModule,

    #[error("trivial span rejected")]
    TrivialSpan,

    #[error("representation failed validation: worst residual {worst:.3e} (axiom {axiom})")]
    Validation { axiom: String, worst: f64 },

    #[error("module rank {rank} is not a multiple of the group order {order}")]
    RankNotMultiple { rank: usize, order: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
