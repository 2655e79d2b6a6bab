use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("division by zero")]
    DivisionByZero,

    #[error("lattice vector has a negative coordinate at index {0}")]
    NegativeCoordinate(usize),

    #[error("factorization coefficient {0} is negative")]
    NegativeCoefficient(usize),

    #[error("integer matrix is singular")]
    Singular,

    #[error("matrix is not strictly copositive")]
    NotStrictlyCopositive,

    #[error("simplex partition refinement exceeded {0} cones")]
    PartitionLimit(usize),

    #[error("matrix is not COP-perfect: minimum vectors span {rank} of {dim} dimensions")]
    NotPerfect { rank: usize, dim: usize },

    #[error("dual cone has more than {0} extreme rays")]
    RayLimit(usize),

    #[error("pivot direction is copositive, the edge of R is unbounded")]
    CopositiveDirection,

    #[error("contiguous vertex search exceeded {0} bisection/doubling rounds")]
    SearchLimit(usize),

    #[error("no pivot candidates")]
    NoCandidates,

    #[error("membership LP and dual rays disagree")]
    InconsistentMembership,

    #[error("contiguous vertex violates the edge contract: {0}")]
    EdgeContract(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}
