use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point {0}")]
    PoleAtEvaluationPoint(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("negative dimension {0}")]
    NegativeDimension(i64),
    #[error("dimension {0} is not an integer")]
    NonIntegralDimension(String),
    #[error("fractional exponent would attach to non-P symbol {0}")]
    FractionalExponentOutsideP(String),
    #[error("elimination stalled with unsolved unknowns: {0}")]
    EliminationStalled(String),
    #[error("non-integral exponent in {0}")]
    NonIntegralExponent(String),
    #[error("framing is not regular semisimple: {0}")]
    NonRegularFraming(String),
    #[error("series recursion is singular at order {0}")]
    RecursionSingular(usize),
    #[error("monomial has no reflectable factor at node {0}")]
    NoReflectableFactor(usize),
    #[error("q-character expansion exceeded {0} monomials")]
    ExpansionBudgetExceeded(usize),
    #[error("apparent poles collide at {0}")]
    DegeneratePole(String),
    #[error("evaluation points coincide")]
    CoincidentPoints,
    #[error("not a tangent vector: {0}")]
    NotTangent(String),
    #[error("framing element is not regular semisimple")]
    NotRegularSemisimple,
    #[error("classical discrepancy is not constant: {0}")]
    NonAffineDiscrepancy(String),
    #[error("singularities coincide")]
    CoincidentSingularities,
    #[error("framing matrix is singular")]
    SingularFraming,
    #[error("Darboux coordinate b must be nonzero")]
    ZeroB,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
