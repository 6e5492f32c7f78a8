use thiserror::Error;

/// Errors surfaced by the exact-geometry operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("vertex list is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("polygon vertices must be strictly convex in counter-clockwise order")]
    BadOrientation,
    #[error("coordinates must sum to zero")]
    NotInHyperplane,
    #[error("zero vector")]
    ZeroVector,
    #[error("site must be nonzero")]
    ZeroSite,
    #[error("invalid facet index {0}")]
    BadFacet(usize),
    #[error("linear map is singular")]
    SingularMap,
    #[error("point is not in general position: {0}")]
    DegeneratePoint(String),
    #[error("dimension {0} exceeds the supported cap {1}")]
    CapExceeded(usize, usize),
    #[error("{0}")]
    BadInput(String),
}
