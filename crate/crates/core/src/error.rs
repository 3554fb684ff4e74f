use thiserror::Error;

use crate::interp::Rejection;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid exponent at position {pos}: exponents must be nonnegative integers")]
    BadExponent { pos: usize },
    #[error("division by a non-constant at position {pos}")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("exponent exceeds the machine-word range")]
    ExponentOverflow,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expected a bivariate polynomial, got {0} variables")]
    NotBivariate(usize),
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("curve is not asserted irreducible")]
    NotIrreducible,
    #[error("irreducibility could not be verified for `{0}`")]
    IrreducibilityUnverified(String),
    #[error("skewness parameter must satisfy t >= 1, got {0}")]
    BadSkewness(String),
    #[error("operation undefined for curve valuations (t = +inf)")]
    InfiniteParameter,
    #[error("intersection oracle undecided at truncation ceiling {ceiling}")]
    OracleUndecided { ceiling: usize },
    #[error("invalid interpolation instance: {0}")]
    Invalid(Rejection),
    #[error("normalized targets are not strictly increasing at index {index}")]
    NonMonotone { index: usize },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{0} must be nonnegative")]
    Negative(&'static str),
    #[error("dimension {dim} exceeds the bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
