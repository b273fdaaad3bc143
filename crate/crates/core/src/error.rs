use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EccError {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("coloring has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("color {color} at position {index} is outside [1, {num_colors}]")]
    ColorOutOfRange {
        index: usize,
        color: u32,
        num_colors: u32,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("LP solution is infeasible: {0}")]
    InfeasibleSolution(String),

    #[error("LP result is not optimal (status {0})")]
    NotOptimal(String),

    #[error("deletion set leaves a bad edge pair between edges {0} and {1}")]
    BadPairRemains(usize, usize),

    #[error("vertex set does not cover graph edge ({0}, {1})")]
    NotACover(usize, usize),

    #[error("search budget of {cap} states exhausted before proving optimality")]
    CapExceeded { cap: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("certificate check failed for case {0}")]
    CertificateFailed(String),
}

pub type Result<T> = std::result::Result<T, EccError>;
