use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesyError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("map is not a derivation: {0}")]
    NotADerivation(String),

    #[error("matrix has nonzero trace {0}")]
    NonzeroTrace(f64),

    #[error("quadratic form is semidefinite and nonzero")]
    DefiniteForm,

    #[error("operators do not commute (residual {0:e})")]
    NotCommuting(f64),

    #[error("hypothesis failed: {hypothesis} ({witness})")]
    HypothesisFailed { hypothesis: String, witness: String },

    #[error("adjoint action on the derived algebra is not R-diagonalizable: {0}")]
    NotRDiagonal(String),

    #[error("algebra is isomorphic to A_{0}")]
    IsomorphicToAn(usize),

    #[error("no codimension-one abelian ideal: {0}")]
    NotCodim1Abelian(String),

    #[error("ideal is not a Heisenberg algebra: {0}")]
    NotHeisenbergIdeal(String),

    #[error("algebra has trivial centre")]
    TrivialCenter,

    #[error("algebra does not have the shape required for this certificate: {0}")]
    WrongShape(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("inner product is not symmetric positive definite: {0}")]
    NotPositiveDefinite(String),
}

impl GeodesyError {
    pub(crate) fn hypothesis(h: impl Into<String>, w: impl Into<String>) -> Self {
        GeodesyError::HypothesisFailed {
            hypothesis: h.into(),
            witness: w.into(),
        }
    }
}

pub type Result<T, E = GeodesyError> = std::result::Result<T, E>;
