use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vector is not in the sum of the subspaces (residual {0:e})")]
    NotInSum(f64),

    #[error("letter index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("coloring mismatch: top {top:?} does not match bottom {bottom:?}")]
    ColoringMismatch { top: Vec<i32>, bottom: Vec<i32> },

    #[error("braid word is not an endomorphism of its coloring")]
    NotEndomorphism,

    #[error("torus coordinate {0} equals 1 on an occurring color")]
    EvaluationAtOne(usize),

    #[error("reduced subspace is not invariant (residual {0:e})")]
    SubspaceNotInvariant(f64),

    #[error("torus point {0} is outside the guaranteed set")]
    OutsideGuarantee(String),

    #[error("sign decision not separated at the precision cap of {0} bits")]
    PrecisionExhausted(usize),

    #[error("value too close to a decision threshold at {0} bits")]
    NearWall(usize),

    #[error("invalid C-complex: {0}")]
    InvalidCComplex(String),

    #[error("unsupported coloring: {0}")]
    UnsupportedColoring(String),

    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
