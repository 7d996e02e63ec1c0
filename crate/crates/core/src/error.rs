//! Error type shared by all transform and quadrature modules.

use thiserror::Error;

/// Errors raised by geometry, quadrature, and transform operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum RadonError {
    /// The quasi-orthogonal inversion map is undefined for planes through the origin.
    #[error("plane passes through the origin (|u| < {threshold:e}); nu map undefined")]
    OriginPlane { threshold: f64 },

    /// Ambient dimension outside the supported range.
    #[error("unsupported dimension n = {n} (supported: {min} ..= {max})")]
    UnsupportedDimension { n: usize, min: usize, max: usize },

    /// Input carries odd-harmonic content that the Funk transform annihilates.
    #[error("odd-harmonic energy fraction {fraction:e} exceeds {limit:e}; not in the range of the Funk transform")]
    OddComponent { fraction: f64, limit: f64 },

    /// Harmonic content above the expansion cutoff is too large.
    #[error("energy fraction {fraction:e} above degree {degree} exceeds {limit:e}")]
    DegreeOverflow {
        degree: usize,
        fraction: f64,
        limit: f64,
    },

    /// Declared decay too slow for an improper integral to converge.
    #[error("declared decay rate {decay} <= {required} required for convergence")]
    DecayTooSlow { decay: f64, required: f64 },

    /// Operation requires a strictly positive evaluation point.
    #[error("evaluation point {point} must be strictly positive")]
    NonPositivePoint { point: f64 },

    /// Sample grid has too few points for the requested stencil.
    #[error("grid with {len} points is too coarse (need at least {required})")]
    GridTooCoarse { len: usize, required: usize },

    /// Marchaud order too small: the defining integral diverges.
    #[error("order ell = {ell} must exceed n/2 - 1 = {bound}")]
    OrderTooSmall { ell: u32, bound: f64 },

    /// Improper integral requested without a declared tail limit.
    #[error("function has no declared limit at infinity; tail cannot be estimated")]
    TailUnbounded,

    /// A quadrature refinement sequence failed its Cauchy test.
    #[error("quadrature did not converge under refinement (last value {value:e}, last delta {delta:e})")]
    Divergent { value: f64, delta: f64 },

    /// Input violates the evenness-in-t condition.
    #[error("function violates evenness in t (max deviation {deviation:e})")]
    NotEven { deviation: f64 },

    /// Declared weighted-class parameters outside the admissible range.
    #[error("class parameters inadmissible: {reason}")]
    ClassViolation { reason: String },

    /// Malformed input that does not fit any mathematical error above.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl RadonError {
    /// Stable machine-readable name, used by the CLI and the C API.
    pub fn name(&self) -> &'static str {
        match self {
            RadonError::OriginPlane { .. } => "OriginPlane",
            RadonError::UnsupportedDimension { .. } => "UnsupportedDimension",
            RadonError::OddComponent { .. } => "OddComponent",
            RadonError::DegreeOverflow { .. } => "DegreeOverflow",
            RadonError::DecayTooSlow { .. } => "DecayTooSlow",
            RadonError::NonPositivePoint { .. } => "NonPositivePoint",
            RadonError::GridTooCoarse { .. } => "GridTooCoarse",
            RadonError::OrderTooSmall { .. } => "OrderTooSmall",
            RadonError::TailUnbounded => "TailUnbounded",
            RadonError::Divergent { .. } => "Divergent",
            RadonError::NotEven { .. } => "NotEven",
            RadonError::ClassViolation { .. } => "ClassViolation",
            RadonError::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, RadonError>;
