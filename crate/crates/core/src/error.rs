use thiserror::Error;

use crate::minkowski::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("zero-length direction")]
    ZeroDirection,
    #[error("affine map is singular (det = {det:e})")]
    SingularMap { det: f64 },
    #[error("invalid unit ball: {0}")]
    InvalidBall(Violation),
    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("point is not outside the body (membership gauge {gauge})")]
    PointInside { gauge: f64 },
    #[error("expected 2 tangent points, sign scan found {found}")]
    RootCount { found: usize },
    #[error("sampling radius range ({0}, {1}) is invalid")]
    InvalidRadiusRange(f64, f64),

    #[error("rays are identical or opposite")]
    DegeneratePair,
    #[error("bisector direction degenerates to zero")]
    DegenerateDirection,
    #[error("equidistance function does not change sign on the angle bracket")]
    BracketFailure,
    #[error("point is not equidistant from the rays ({d_b} vs {d_c})")]
    NotEquidistant { d_b: f64, d_c: f64 },
    #[error("point lies outside the angular sector of the rays")]
    OutsideSector,
    #[error("ray apex is not on the mirror line (offset {0:e})")]
    ApexOffLine(f64),
    #[error("incoming ray is collinear with the mirror line")]
    Grazing,
    #[error("tangent lines are parallel")]
    ParallelTangents,
    #[error("no tangent point gives an outgoing ray on the incoming side")]
    SideSelection,
    #[error("neither direction of the bisector line lies in the sector")]
    HullSelection,

    #[error("point ({x}, {y}) is within the singular margin of the slope field")]
    SingularDomain { x: f64, y: f64 },
    #[error("start point ({x}, {y}) is outside the domain")]
    InvalidStart { x: f64, y: f64 },
    #[error("step must lie in (0, 1e-2], got {0}")]
    InvalidStep(f64),
    #[error("point ({x}, {y}) makes (x-1)(y-1) vanish")]
    DegeneratePoint { x: f64, y: f64 },
    #[error("at least {need} points required, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("1 - cbar^2 vanishes")]
    DivisionDegenerate,
    #[error("unit ball is not in normalized position: {0}")]
    NotNormalized(String),

    #[error("chord does not meet the table boundary")]
    NoIntersection,
    #[error("start point is outside the table (membership gauge {0})")]
    OutsideTable(f64),
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("vertex lies on the opposite side line")]
    VertexOnSide,
    #[error("pedal triangle does not exist")]
    NoPedalTriangle,
}

impl Error {
    /// Errors caused by invalid inputs, as opposed to numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NonFinite
                | Error::ZeroDirection
                | Error::SingularMap { .. }
                | Error::InvalidBall(_)
                | Error::InvalidScale(_)
                | Error::PointInside { .. }
                | Error::InvalidRadiusRange(..)
                | Error::DegeneratePair
                | Error::OutsideSector
                | Error::ApexOffLine(_)
                | Error::InvalidStart { .. }
                | Error::InvalidStep(_)
                | Error::TooFewPoints { .. }
                | Error::NotNormalized(_)
                | Error::OutsideTable(_)
                | Error::DegenerateTriangle
                | Error::VertexOnSide
        )
    }
}
