use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as an exact rational (expected `p`, `p/q` or a decimal)")]
pub struct ParseRationalError(pub String);

/// Failures when substituting values into a rational function.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("denominator vanishes at the given assignment")]
    DenominatorVanishes,
    #[error("indeterminate `{0}` has no assigned value")]
    Unassigned(String),
}

/// Failures of the geometric kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the two points coincide; no unique line passes through them")]
    CoincidentPoints,
    #[error("the two lines coincide; they have no unique intersection")]
    CoincidentLines,
    #[error("the points are collinear; no circle passes through them")]
    CollinearInput,
    #[error("point lies on the line at infinity")]
    PointAtInfinity,
    #[error("the known point does not lie on both the circle and the line")]
    KnownPointNotIncident,
    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),
    #[error("triangle is not realizable: {0}")]
    Unrealizable(String),
    #[error("the correspondence is not a direct similarity")]
    NotDirectlySimilar,
    #[error("the source triangle is degenerate")]
    DegenerateSource,
    #[error("the similarity is a pure translation and has no fixed point")]
    NoFixedPoint,
    #[error("the similarity fixed point misses circle {0}")]
    MiquelVerificationFailed(&'static str),
}
