use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartanMatrix(String),
    #[error("operation requires finite type Cartan datum")]
    NonFiniteType,
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("negative bound: {0}")]
    NegativeBound(i64),
    #[error("Weyl group enumeration exceeded {0} elements")]
    WeylGroupTooLarge(usize),
    #[error("unknown Cartan preset '{0}'")]
    UnknownPreset(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("singular matrix at vertex {0}")]
    SingularGroupElement(usize),
    #[error("generation depth {have} is too small, need at least {need}")]
    DepthTooSmall { have: i64, need: i64 },
    #[error("retry budget exhausted: {0}")]
    RetryBudgetExhausted(String),
    #[error("move parameter {param} = {value} outside range [{lo}, {hi}]")]
    MoveOutOfRange {
        param: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("postcondition verification failed: {0}")]
    PostconditionFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid iota sequence: {0}")]
    InvalidIota(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
