use thiserror::Error;

use crate::traversal::Ellipse;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("polygon is not convex at vertex {vertex}")]
    NotConvex { vertex: usize },
    #[error("polygon has fewer than 3 distinct, non-collinear vertices")]
    Degenerate,
    #[error("ray origin ({x}, {y}) is not strictly inside the polygon")]
    OriginNotInterior { x: f64, y: f64 },
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("points coincide, chord is undefined")]
    CoincidentPoints,
    #[error("homothety factor {0} is not positive")]
    NonPositiveFactor(f64),
    #[error("point ({x}, {y}) is not strictly inside the domain")]
    PointNotInterior { x: f64, y: f64 },
    #[error("radius {0} is not positive")]
    NonPositiveRadius(f64),
    #[error("site {index} is not strictly inside the domain")]
    SiteNotInterior { index: usize },
    #[error("step would push vertex {vertex} through the vanishing line (denominator {denominator})")]
    StepTooLarge { vertex: usize, denominator: f64 },
    #[error("points are affinely degenerate")]
    DegenerateInput,
    #[error("ellipsoid iteration did not converge after {iterations} steps")]
    NoConvergence { iterations: usize, last: Box<Ellipse> },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Validation(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI and the kernel boundary.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::NotConvex { .. } => "NotConvex",
            Error::Degenerate => "Degenerate",
            Error::OriginNotInterior { .. } => "OriginNotInterior",
            Error::ZeroDirection => "ZeroDirection",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::NonPositiveFactor(_) => "NonPositiveFactor",
            Error::PointNotInterior { .. } => "PointNotInterior",
            Error::NonPositiveRadius(_) => "NonPositiveRadius",
            Error::SiteNotInterior { .. } => "SiteNotInterior",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::DegenerateInput => "DegenerateInput",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::Parse { .. } => "ParseError",
            Error::Validation(_) => "ValidationError",
        }
    }
}
