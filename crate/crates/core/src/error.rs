use thiserror::Error;

/// Reasons a set of rings does not form a valid polygon.
///
/// Ring index 0 is the outer ring, index `i + 1` is hole `i`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error("ring {ring} intersects itself")]
    SelfIntersection { ring: usize },
    #[error("ring {ring} is not strictly inside the outer ring")]
    HoleOutsideOuter { ring: usize },
    #[error("rings {ring} and {other} overlap")]
    HolesOverlap { ring: usize, other: usize },
    #[error("ring {ring} is degenerate: {reason}")]
    DegenerateRing { ring: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("point ({x}, {y}) lies outside the polygon")]
    PointOutsidePolygon { x: f64, y: f64 },
    #[error("point set is empty")]
    EmptySet,
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("operation requires a simple polygon without holes")]
    PolygonHasHoles,
    #[error("polygon has no area")]
    EmptyPolygon,
    #[error("invalid number of disks k = {0}")]
    InvalidK(usize),
    #[error("{count} candidates exceed the exact-search limit of {limit}")]
    TooManyCandidates { count: usize, limit: usize },
    #[error("grid sample is disconnected from the query point ({x}, {y})")]
    DisconnectedSample { x: f64, y: f64 },
    #[error("not every polygon vertex is covered by the two disks")]
    VerticesNotCovered,
    #[error("at most two edges may be handled at once, got {0}")]
    TooManyEdges(usize),
    #[error("geometric invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("invalid input {field}: {reason}")]
    Input { field: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
