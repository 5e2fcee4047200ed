use thiserror::Error;

use crate::grid::GridPoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Grassmannian parameters l={l}, m={m}: need 1 <= l < m")]
    InvalidParams { l: usize, m: usize },

    #[error("invalid grid point {0:?} for G({1},{2})")]
    InvalidPoint(Vec<usize>, usize, usize),

    #[error("point set is not downward closed: {below} is missing below {above}")]
    NotDownwardClosed { above: GridPoint, below: GridPoint },

    #[error("grid has {points} points, enumeration guard is {guard}")]
    TooLarge { points: u64, guard: u64 },

    #[error("operation requires l = 2, got l = {0}")]
    NotTwoDim(usize),

    #[error("operation is undefined for the empty union")]
    EmptyUnion,

    #[error("invalid subset of {{1..{max}}}: {reason}")]
    InvalidMSet { max: usize, reason: String },

    #[error("invalid sigma sequence: {0}")]
    InvalidSigma(String),

    #[error("point-count reciprocity violated: h_U has degree {degree} > {delta}")]
    ReciprocityViolation { degree: i64, delta: usize },

    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("unsupported field size q={0}")]
    UnsupportedField(u32),

    #[error("modulus for GF({q}) is not irreducible")]
    ReducibleModulus { q: u32 },

    #[error("enumeration needs {required} subspaces, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("oracle tables need {required} machine words, limit is {limit}")]
    OracleMemory { required: u128, limit: u128 },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
