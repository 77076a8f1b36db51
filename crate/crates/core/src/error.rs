use thiserror::Error;

use crate::optimizer::SelectionMatrix;
use crate::semifield::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot invert the semifield zero")]
    InversionOfZero,

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix dimensions must be positive and entries must fill them")]
    EmptyMatrix,

    #[error("matrix has no nonzero entry")]
    AllZeroMatrix,

    #[error("vector has no nonzero component")]
    ZeroVector,

    #[error("column {0} is zero")]
    ZeroColumn(usize),

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("Tr(A) = {trace} exceeds the identity; no regular solution of Ax <= x exists")]
    SpectralConditionViolated { trace: Scalar },

    #[error("{0} is not column-regular")]
    NotColumnRegular(String),

    #[error("{0} is not row-regular")]
    NotRowRegular(String),

    #[error("{0} is not regular")]
    NotRegularVector(String),

    #[error("{0} is not a regular matrix")]
    NotRegularMatrix(String),

    #[error("precedence constraints are cyclic with positive total lag (Tr(B+CA) = {trace})")]
    InfeasiblePrecedence { trace: Scalar },

    #[error("deadline bound (f^- D S0)^- has a zero component; no admissible coefficients")]
    InfeasibleDeadline,

    #[error("coefficient vector exceeds the admissible bound at component {0}")]
    CoefficientOutOfBound(usize),

    #[error("enumeration budget of {budget} selections exceeded")]
    EnumerationBudgetExceeded {
        budget: usize,
        partial: Vec<SelectionMatrix>,
    },

    #[error("plotting needs a 2-dimensional problem, got n = {0}")]
    UnsupportedDimension(usize),

    #[error("value {0} is outside the carrier set of the semifield")]
    InvalidValue(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid problem: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn shape(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::ShapeMismatch { op, left, right }
    }
}
