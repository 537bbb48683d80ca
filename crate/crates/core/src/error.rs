use thiserror::Error;

/// Errors raised by the exact-arithmetic and geometry layers.
///
/// Pipeline stages never propagate these as panics; they are folded into a
/// failing certificate instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error("degree {got} too small: {op} needs degree >= {min}")]
    DegreeTooSmall { op: &'static str, got: usize, min: usize },

    #[error("{op}: the zero form is not allowed")]
    ZeroForm { op: &'static str },

    #[error("polynomial is not symmetric: coefficient of {monomial} is {lhs} but its swap {swapped} has {rhs}")]
    NotSymmetric {
        monomial: String,
        swapped: String,
        lhs: String,
        rhs: String,
    },

    #[error("generator {index} is not homogeneous")]
    Inhomogeneous { index: usize },

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("term budget exceeded: {terms} terms > budget {budget}")]
    TermBudget { terms: usize, budget: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("points must be distinct")]
    EqualPoints,

    #[error("vector is not decomposable (Pluecker residual {0:?})")]
    NotDecomposable(Vec<String>),

    #[error("the hyperplane net is linearly dependent")]
    DependentNet,

    #[error("generator {generator} does not vanish on the curve (value {value} at parameter {parameter})")]
    NotContained {
        generator: usize,
        parameter: String,
        value: String,
    },

    #[error("unknown divisor class name {0:?}")]
    UnknownClass(String),

    #[error("no prime of good reduction found in the candidate list")]
    NoGoodPrime,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("genericity check failed: {0}")]
    NotGeneric(String),
}

pub type Result<T> = std::result::Result<T, ForgeError>;
