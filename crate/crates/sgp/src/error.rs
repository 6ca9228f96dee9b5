//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when constructing handles or evaluating
/// operators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// `f(x) > 0` with a zero subgradient certifies `min f = f(x) > 0`,
    /// so the level set `C = {f <= 0}` is empty.
    #[error("infeasibility certificate: f(x) = {fx} > 0 with zero subgradient, so C is empty")]
    InfeasibilityCertificate { fx: f64 },

    #[error("coordinates must be finite, got {0}")]
    NotFinite(f64),

    #[error("halfspace normal must be nonzero")]
    ZeroNormal,

    #[error("scalar must be positive, got {0}")]
    NonpositiveScalar(f64),

    #[error("exponent must be >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("matrix is not unitary: max |A^T A - I| entry = {max_dev}")]
    NotUnitary { max_dev: f64 },

    #[error("matrix is not symmetric: max |A - A^T| entry = {max_dev}")]
    NotSymmetric { max_dev: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eig}")]
    NotPsd { min_eig: f64 },

    #[error("matrix is not nonexpansive: spectral norm = {norm}")]
    NotNonexpansive { norm: f64 },

    #[error("direction vector must have unit norm, got {0}")]
    NotUnit(f64),

    #[error("function list must be nonempty")]
    EmptyList,

    #[error("no proximity operator supplied and none can be derived")]
    ProxNotSupplied,

    #[error("bracket expansion failed to enclose the resolvent root near {x}")]
    NoBracket { x: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("unsupported set for this construction: {0}")]
    UnsupportedSet(String),

    #[error("invalid weights: {0}")]
    BadWeights(String),

    #[error("handle has no second derivative")]
    MissingSecondDerivative,

    #[error("supplied point is not in C: f(c) = {fc} > 0")]
    BadCSample { fc: f64 },

    #[error("missing oracle: {0}")]
    MissingOracle(String),

    #[error("invalid sample spec: {0}")]
    InvalidSampleSpec(String),

    /// The 1-D reconstruction needs `bdry D` disjoint from `C`.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("quadrature failed to reach tolerance: {0}")]
    QuadratureFailure(String),

    #[error("finite-difference stencil produced non-finite entries")]
    SingularStencil,

    /// Malformed function-spec strings or CLI option values.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
