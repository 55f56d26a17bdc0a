use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(u32),

    #[error("generator {index} is outside the alphabet of rank {rank}")]
    InvalidGenerator { index: u32, rank: u32 },

    #[error("{0} is undefined for the empty word")]
    EmptyWord(&'static str),

    #[error("offset {offset} out of range for a word of length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },

    #[error("relator {index} is not cyclically reduced")]
    NotCyclicallyReduced { index: usize },

    #[error("presentation has no relators")]
    NoRelators,

    #[error("invalid λ: {0}")]
    InvalidLambda(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("probability target {0} is outside the admissible range")]
    InvalidProbability(f64),

    #[error("no finite guarantee: {0}")]
    NoGuarantee(String),

    #[error("enumeration needs {cost} presentations, budget is {budget}")]
    BudgetExceeded { cost: String, budget: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
