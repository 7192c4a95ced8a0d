use thiserror::Error;

/// Errors raised across the crate. Tagged "normal" outcomes (a geodesic that
/// never reaches the boundary, a point with no real Jacobi coordinates) are
/// returned as enum variants of the operation result, not as errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid confocal family: {0}")]
    InvalidFamily(String),
    #[error("vector is not tangent to the hyperboloid at the base point (|<p,v>| = {0:e})")]
    NotTangent(f64),
    #[error("point is not on the hyperboloid (|<p,p> - 1| = {0:e})")]
    NotOnHyperboloid(f64),
    #[error("point is not on the boundary conic (|Q0| = {0:e})")]
    NotOnBoundary(f64),
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("no admissible direction realises caustic {0} from the given point")]
    NoDirection(String),
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("series is not normalized (constant term must be 1)")]
    NotNormalized,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter value {0} sits at a branch point")]
    InvalidRange(String),
    #[error("caustic parameter {0} is outside every admissible range")]
    NuOutOfAllRanges(String),
    #[error("unsupported period: {0}")]
    UnsupportedPeriod(String),
    #[error("elliptic modulus {0} outside [0, 1)")]
    ModulusOutOfRange(f64),
    #[error("nome {0} outside (0, 1)")]
    NomeOutOfRange(f64),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("coincident roots in quartic")]
    CoincidentRoots,
    #[error("caustic is not periodic with the requested period: {0}")]
    NotPeriodic(String),
    #[error("normalization failure: {0}")]
    NormalizationFailure(String),
    #[error("parameter constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("no admissible root: {0}")]
    NoAdmissibleRoot(String),
    #[error("alpha {0} outside (0, 1)")]
    AlphaOutOfRange(f64),
    #[error("discriminant mismatch beyond scalar: {0}")]
    MismatchBeyondScalar(String),
    #[error("table is not collared")]
    NotCollared,
    #[error("caustic {0} outside the range of the requested case")]
    NuOutOfRange(String),
    #[error("target rotation number {0} is not bracketed in the case range")]
    NotBracketed(f64),
    #[error("degenerate level set at lambda = {0}")]
    DegenerateLevel(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
