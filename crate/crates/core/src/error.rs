use thiserror::Error;

use crate::ring::Elem;

/// Errors raised by ring, matrix, code and matrix-product-code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("degenerate ring spec: {0}")]
    DegenerateSpec(String),
    #[error("ring of order {order} exceeds the size cap {cap}")]
    RingTooLarge { order: u128, cap: usize },
    #[error("component index {index} out of range (ring has {count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("element {0} is not a unit")]
    NotAUnit(Elem),
    #[error("element index {index} out of range for ring of order {order}")]
    ElementOutOfRange { index: u64, order: usize },
    #[error("bad element literal: {0}")]
    BadLiteral(String),
    #[error("invalid weight table: {0}")]
    BadWeightTable(String),

    #[error("matrices are over different rings")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of order {0} exceeds the determinant cap")]
    DeterminantTooLarge(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not full-row-rank (component {component})")]
    NotFrr { component: usize, witness: Vec<Elem> },

    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("enumeration of {needed} words exceeds the cap {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u128 },
    #[error("index {index} out of range for row code (allowed {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("invalid profile: {0}")]
    BadProfile(String),
    #[error("matrix is not SFRR for the profile: {0}")]
    ProfileNotSfrr(String),
    #[error("matrix is not quasi-orthogonal")]
    NotQuasiOrthogonal,
    #[error("component code {0} is not a self-orthogonal linear code")]
    NotSelfOrthogonalComponent(usize),
    #[error("component code {0} must be linear")]
    NonLinearComponent(usize),
    #[error("matrix is not non-singular by columns")]
    NotNsc,
    #[error("matrix is not two-way ({0})-SFRR")]
    NotTwoWaySfrr(usize),
    #[error("matrix lacks the {0}-partitioned orthogonal property")]
    NotPartitionedOrthogonal(usize),
    #[error("number of codes ({codes}) does not match matrix rows ({rows})")]
    CodeCountMismatch { codes: usize, rows: usize },
    #[error("search space of {0} matrices exceeds the cap")]
    SearchSpaceTooLarge(u128),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Malformed input, as opposed to a well-formed input that fails a
    /// mathematical precondition.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::BadLiteral(_) | Error::BadWeightTable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
