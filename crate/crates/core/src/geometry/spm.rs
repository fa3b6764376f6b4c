//! Shortest path maps: cells in which the distance to a fixed source is
//! `offset + |anchor - q|`.

use serde::{Deserialize, Serialize};

use super::engine::{GeodesicEngine, Parent, ShortestPathTree};
use super::point::{orient, Point2};
use super::visibility::{clip_half_plane, ring_area, ring_contains, visibility_polygon};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpmCell {
    pub region: Vec<Point2>,
    pub anchor: Point2,
    /// Polygon vertex index of the anchor; `None` for the source itself.
    pub anchor_vertex: Option<usize>,
    pub offset: f64,
}

impl SpmCell {
    pub fn contains(&self, q: Point2, eps: f64) -> bool {
        ring_contains(&self.region, q, eps)
    }

    pub fn distance(&self, q: Point2) -> f64 {
        self.offset + self.anchor.dist(q)
    }
}

/// For simple polygons the cells tile the polygon. With holes a point may lie
/// in several cells; [`locate`](Self::locate) picks the shortest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortestPathMap {
    pub source: Point2,
    pub cells: Vec<SpmCell>,
}

impl ShortestPathMap {
    pub fn build(engine: &GeodesicEngine, source: Point2) -> Result<Self> {
        let tree = engine.shortest_path_tree(source)?;
        Ok(Self::from_tree(engine, &tree))
    }

    pub fn from_tree(engine: &GeodesicEngine, tree: &ShortestPathTree) -> Self {
        let poly = engine.polygon();
        let eps = engine.eps();
        let area_tol = eps * poly.bbox_diagonal().max(1.0);
        let mut cells = vec![SpmCell {
            region: visibility_polygon(poly, tree.source, eps),
            anchor: tree.source,
            anchor_vertex: None,
            offset: 0.0,
        }];
        for &a in engine.reflex_vertices() {
            if Some(a) == tree.source_vertex {
                continue;
            }
            let from = match tree.parent[a] {
                Parent::Source => tree.source,
                Parent::Vertex(p) => poly.vertex(p),
                Parent::Unreachable => continue,
            };
            let va = poly.vertex(a);
            if from.dist(va) <= eps {
                continue;
            }
            let Some(region) = shadow_region(engine, from, a) else {
                continue;
            };
            if ring_area(&region) > area_tol {
                cells.push(SpmCell {
                    region,
                    anchor: va,
                    anchor_vertex: Some(a),
                    offset: tree.dist[a],
                });
            }
        }
        Self {
            source: tree.source,
            cells,
        }
    }

    /// Cell giving the shortest distance to `q` among cells containing it.
    pub fn locate(&self, q: Point2, eps: f64) -> Option<&SpmCell> {
        self.cells
            .iter()
            .filter(|c| c.contains(q, eps))
            .min_by(|a, b| a.distance(q).total_cmp(&b.distance(q)))
    }

    pub fn distance(&self, q: Point2, eps: f64) -> Option<f64> {
        self.locate(q, eps).map(|c| c.distance(q))
    }
}

/// Points seen from reflex vertex `a` behind it when arriving from `from`.
fn shadow_region(engine: &GeodesicEngine, from: Point2, a: usize) -> Option<Vec<Point2>> {
    let poly = engine.polygon();
    let va = poly.vertex(a);
    let dir = va - from;
    let prev = poly.vertex(poly.prev(a)) - va;
    let next = poly.vertex(poly.next(a)) - va;
    let tol = engine.eps() * dir.norm();
    // an edge lying straight behind the anchor (path grazing along it) takes no side
    let side_of = |e: Point2| {
        let c = dir.cross(e) / e.norm();
        if c > tol {
            Some(1.0)
        } else if c < -tol {
            Some(-1.0)
        } else if dir.dot(e) < 0.0 {
            None
        } else {
            Some(0.0)
        }
    };
    let (side, first) = match (side_of(prev), side_of(next)) {
        (Some(a), Some(b)) if a == b && a != 0.0 => {
            // incident edge reached first when rotating the extension ray toward `side`
            let ang = |e: Point2| (a * dir.cross(e)).atan2(dir.dot(e));
            (a, if ang(prev) <= ang(next) { prev } else { next })
        }
        (Some(a), None) if a != 0.0 => (a, prev),
        (None, Some(a)) if a != 0.0 => (a, next),
        _ => return None,
    };
    let vis = visibility_polygon(poly, va, engine.eps());
    let ext = va + dir;
    // keep the side of the extension line where the polygon edges are
    let clipped = if side > 0.0 {
        clip_half_plane(&vis, va, ext)
    } else {
        clip_half_plane(&vis, ext, va)
    };
    if clipped.len() < 3 {
        return None;
    }
    // and the side of the first edge that contains the extension ray
    let tip = va + first;
    let clipped = if orient(va, tip, ext) >= 0.0 {
        clip_half_plane(&clipped, va, tip)
    } else {
        clip_half_plane(&clipped, tip, va)
    };
    (clipped.len() >= 3).then_some(clipped)
}
