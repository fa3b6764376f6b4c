//! Packing and covering polygons with geodesic disks.
//!
//! Distances are measured along shortest paths that stay inside a polygon
//! (possibly with holes). On top of a geodesic distance engine the crate
//! provides greedy disk packing, farthest-first k-covering and k-packing,
//! a two-disk cover decision and minimization procedure, and brute-force
//! oracles for checking all of them.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod covering;
pub mod disk;
pub mod error;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod packing;
pub mod shapes;
pub mod two_cover;

pub use error::{Error, PolygonError, Result};
pub use geometry::{GeodesicEngine, GeodesicPath, Point2, Polygon, PolygonRings, EPS_GEOM};
