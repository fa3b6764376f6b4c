//! Polygons, visibility, and geodesic distances.

pub mod circle;
pub mod engine;
pub mod point;
pub mod polygon;
pub mod spm;
pub mod triangulate;
pub mod visibility;

pub use engine::{GeodesicEngine, GeodesicPath, Parent, PointProfile, ShortestPathTree};
pub use point::{orient, Point2, EPS_GEOM};
pub use polygon::{Edge, Polygon, PolygonRings};
pub use spm::{ShortestPathMap, SpmCell};
pub use triangulate::{triangulate, Triangulation};
pub use visibility::{segment_visible, visibility_polygon, VisibilityGraph};
