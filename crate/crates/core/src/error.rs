use thiserror::Error;

/// Errors raised by the exact and certified routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of zero polynomials")]
    GcdOfZeroPolynomials,
    #[error("degree must be ≥ 1")]
    DegreeTooSmall,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("roots must be simple")]
    RootsNotSimple,
    #[error("empty point list")]
    EmptyPointList,
    #[error("empty vertex list")]
    EmptyVertexList,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("lower bound exceeds upper bound")]
    InvertedInterval,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("row or column sum differs from 2 (row/column {index})")]
    NotDoublyStochastic { index: usize },
    #[error("matrix is not invariant under the involution pair")]
    NotInvariant,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("not an involution: {0:?}")]
    InvalidInvolution(Vec<usize>),
    #[error("inconsistent signatures: {0}")]
    InconsistentSignature(String),
    #[error("{what}: d = {d} exceeds the supported limit {limit}")]
    TooLarge { what: &'static str, d: usize, limit: usize },
    #[error("cycle outside types 1-4: {0}")]
    NotAVertex(String),
    #[error("point multiset is not closed under complex conjugation")]
    NotConjugationClosed,
    #[error("the W2 enclosure does not meet any root of h")]
    NoEnclosedRoot,
    #[error("precision cap of {bits} bits reached: {reason}")]
    PrecisionExhausted { bits: u32, reason: String },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
