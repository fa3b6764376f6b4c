//! Geodesic disks and their boundaries.
//!
//! The boundary of a geodesic disk consists of circular arcs, each centered
//! at the disk center or at a reflex vertex whose shortest path from the
//! center is shorter than the radius, together with the pieces of the polygon
//! boundary that lie inside the disk.

pub mod arrangement;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::circle::{circle_circle, circle_segment};
use crate::geometry::point::normalize_angle;
use crate::geometry::{GeodesicEngine, Point2, Polygon, ShortestPathTree};

pub use arrangement::{update_arrangement, ArrangementBoundary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicDisk {
    pub center: Point2,
    pub radius: f64,
}

impl GeodesicDisk {
    pub fn new(center: Point2, radius: f64) -> Self {
        Self { center, radius }
    }
}

/// Counterclockwise circular arc from `start_angle` to `end_angle`
/// (`start_angle ∈ [0, 2π)`, `end_angle > start_angle`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub anchor: Point2,
    pub anchor_vertex: Option<usize>,
    pub residual_radius: f64,
    pub start_angle: f64,
    pub end_angle: f64,
}

impl Arc {
    pub fn sweep(&self) -> f64 {
        self.end_angle - self.start_angle
    }

    pub fn is_full_circle(&self) -> bool {
        self.sweep() >= TAU - 1e-12
    }

    pub fn point_at_angle(&self, theta: f64) -> Point2 {
        Point2::from_polar(self.anchor, self.residual_radius, theta)
    }

    /// Point at fraction `t ∈ [0, 1]` of the sweep.
    pub fn point_at(&self, t: f64) -> Point2 {
        self.point_at_angle(self.start_angle + t * self.sweep())
    }

    pub fn start(&self) -> Point2 {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Point2 {
        self.point_at(1.0)
    }

    pub fn midpoint(&self) -> Point2 {
        self.point_at(0.5)
    }

    pub fn length(&self) -> f64 {
        self.residual_radius * self.sweep()
    }

    /// Position of `theta` along the arc as an angle offset from the start,
    /// if it lies on the arc within angular tolerance `tol`.
    pub fn angle_offset(&self, theta: f64, tol: f64) -> Option<f64> {
        let off = normalize_angle(theta - self.start_angle);
        if off <= self.sweep() + tol {
            Some(off.min(self.sweep()))
        } else if off >= TAU - tol {
            Some(0.0)
        } else {
            None
        }
    }

    pub fn contains_point(&self, p: Point2, tol: f64) -> bool {
        (p.dist(self.anchor) - self.residual_radius).abs() <= tol
            && self
                .angle_offset((p - self.anchor).angle(), tol / self.residual_radius.max(tol))
                .is_some()
    }

    /// Sub-arc between two angle offsets from the start.
    pub fn sub_arc(&self, from: f64, to: f64) -> Arc {
        let start = normalize_angle(self.start_angle + from);
        Arc {
            start_angle: start,
            end_angle: start + (to - from),
            ..*self
        }
    }

    /// Contribution to `½∮(x dy − y dx)` along the arc.
    pub fn green_area(&self) -> f64 {
        let (c, r) = (self.anchor, self.residual_radius);
        let (t0, t1) = (self.start_angle, self.end_angle);
        0.5 * (r * r * (t1 - t0) + c.x * r * (t1.sin() - t0.sin()) - c.y * r * (t1.cos() - t0.cos()))
    }
}

/// Part of a polygon edge, oriented like the edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySegment {
    pub edge: usize,
    pub a: Point2,
    pub b: Point2,
}

impl BoundarySegment {
    pub fn point_at(&self, t: f64) -> Point2 {
        self.a.lerp(self.b, t)
    }

    pub fn midpoint(&self) -> Point2 {
        self.a.midpoint(self.b)
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn green_area(&self) -> f64 {
        0.5 * self.a.cross(self.b)
    }
}

/// One piece of a disk boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    Arc(Arc),
    Segment(BoundarySegment),
}

impl Piece {
    pub fn start(&self) -> Point2 {
        match self {
            Piece::Arc(a) => a.start(),
            Piece::Segment(s) => s.a,
        }
    }

    pub fn end(&self) -> Point2 {
        match self {
            Piece::Arc(a) => a.end(),
            Piece::Segment(s) => s.b,
        }
    }

    pub fn midpoint(&self) -> Point2 {
        match self {
            Piece::Arc(a) => a.midpoint(),
            Piece::Segment(s) => s.midpoint(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Piece::Arc(a) => a.length(),
            Piece::Segment(s) => s.length(),
        }
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        match self {
            Piece::Arc(a) => a.point_at(t),
            Piece::Segment(s) => s.point_at(t),
        }
    }

    pub fn green_area(&self) -> f64 {
        match self {
            Piece::Arc(a) => a.green_area(),
            Piece::Segment(s) => s.green_area(),
        }
    }

    /// Splits the piece at the given points (those lying on it), returning
    /// sub-pieces in order. Pieces shorter than `tol` are dropped.
    pub fn split_at(&self, points: &[Point2], tol: f64) -> Vec<Piece> {
        match self {
            Piece::Arc(arc) => {
                let atol = tol / arc.residual_radius.max(tol);
                let mut cuts: Vec<f64> = points
                    .iter()
                    .filter(|p| (p.dist(arc.anchor) - arc.residual_radius).abs() <= tol * 10.0)
                    .filter_map(|p| arc.angle_offset((*p - arc.anchor).angle(), atol))
                    .collect();
                let sweep = arc.sweep();
                let full = arc.is_full_circle();
                cuts.sort_by(f64::total_cmp);
                cuts.dedup_by(|a, b| (*a - *b).abs() <= atol);
                if full {
                    if cuts.is_empty() {
                        return vec![*self];
                    }
                    let first = cuts[0];
                    let mut out = Vec::new();
                    for k in 0..cuts.len() {
                        let from = cuts[k];
                        let to = if k + 1 < cuts.len() { cuts[k + 1] } else { first + TAU };
                        if (to - from) * arc.residual_radius > tol {
                            out.push(Piece::Arc(arc.sub_arc(from, to)));
                        }
                    }
                    return out;
                }
                let mut bounds = vec![0.0];
                bounds.extend(cuts.into_iter().filter(|&c| c > atol && c < sweep - atol));
                bounds.push(sweep);
                bounds
                    .windows(2)
                    .filter(|w| (w[1] - w[0]) * arc.residual_radius > tol)
                    .map(|w| Piece::Arc(arc.sub_arc(w[0], w[1])))
                    .collect()
            }
            Piece::Segment(seg) => {
                let len = seg.length();
                let d = seg.b - seg.a;
                let mut cuts: Vec<f64> = points
                    .iter()
                    .filter(|p| crate::geometry::point::point_segment_distance(**p, seg.a, seg.b).0 <= tol * 10.0)
                    .map(|p| (*p - seg.a).dot(d) / (len * len))
                    .filter(|&t| t * len > tol && (1.0 - t) * len > tol)
                    .collect();
                cuts.sort_by(f64::total_cmp);
                let mut bounds = vec![0.0];
                bounds.extend(cuts);
                bounds.push(1.0);
                bounds
                    .windows(2)
                    .filter(|w| (w[1] - w[0]) * len > tol)
                    .map(|w| {
                        Piece::Segment(BoundarySegment {
                            edge: seg.edge,
                            a: seg.point_at(w[0]),
                            b: seg.point_at(w[1]),
                        })
                    })
                    .collect()
            }
        }
    }

    /// Polyline approximation with `per_turn` segments per full circle.
    pub fn tessellate(&self, per_turn: usize) -> Vec<Point2> {
        match self {
            Piece::Segment(s) => vec![s.a, s.b],
            Piece::Arc(a) => {
                let steps = ((a.sweep() / TAU * per_turn as f64).ceil() as usize).max(1);
                (0..=steps).map(|k| a.point_at(k as f64 / steps as f64)).collect()
            }
        }
    }
}

/// The boundary of one geodesic disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskBoundary {
    pub center: Point2,
    pub radius: f64,
    pub arcs: Vec<Arc>,
    pub boundary_portions: Vec<BoundarySegment>,
}

/// An intersection point between two boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub point: Point2,
    pub tangential: bool,
}

impl DiskBoundary {
    pub fn disk(&self) -> GeodesicDisk {
        GeodesicDisk::new(self.center, self.radius)
    }

    pub fn pieces(&self) -> Vec<Piece> {
        self.arcs
            .iter()
            .map(|&a| Piece::Arc(a))
            .chain(self.boundary_portions.iter().map(|&s| Piece::Segment(s)))
            .collect()
    }

    /// Enclosed area, from Green's theorem over the oriented pieces.
    pub fn area(&self) -> f64 {
        self.pieces().iter().map(Piece::green_area).sum()
    }

    /// Pieces chained into closed loops by matching endpoints.
    pub fn loops(&self, tol: f64) -> Vec<Vec<Piece>> {
        chain_loops(self.pieces(), tol)
    }

    /// Points where arcs meet the polygon boundary.
    pub fn boundary_contacts(&self, poly: &Polygon, tol: f64) -> Vec<Point2> {
        let mut out: Vec<Point2> = Vec::new();
        for arc in self.arcs.iter().filter(|a| !a.is_full_circle()) {
            for p in [arc.start(), arc.end()] {
                if poly.on_boundary(p, tol) {
                    push_unique(&mut out, p, tol);
                }
            }
        }
        out
    }
}

pub(crate) fn push_unique(v: &mut Vec<Point2>, p: Point2, tol: f64) {
    if !v.iter().any(|q| q.dist(p) <= tol) {
        v.push(p);
    }
}

/// Greedy endpoint chaining; open chains are returned as they are.
pub fn chain_loops(mut pieces: Vec<Piece>, tol: f64) -> Vec<Vec<Piece>> {
    let mut loops = Vec::new();
    while let Some(first) = pieces.pop() {
        let mut chain = vec![first];
        loop {
            let end = chain.last().expect("chain is non-empty").end();
            if end.dist(chain[0].start()) <= tol && !(chain.len() == 1 && matches!(first, Piece::Segment(_))) {
                break;
            }
            let next = pieces
                .iter()
                .enumerate()
                .filter(|(_, p)| p.start().dist(end) <= tol.max(1e-7))
                .min_by(|a, b| a.1.start().dist(end).total_cmp(&b.1.start().dist(end)))
                .map(|(i, _)| i);
            match next {
                Some(i) => chain.push(pieces.swap_remove(i)),
                None => break,
            }
        }
        loops.push(chain);
    }
    loops
}

pub(crate) fn residual_tol(r: f64) -> f64 {
    1e-9 * r.max(1.0)
}

/// Boundary of the geodesic disk of radius `r` about `c`.
pub fn disk_boundary(engine: &GeodesicEngine, c: Point2, r: f64) -> Result<DiskBoundary> {
    if !(r > engine.eps()) || !r.is_finite() {
        return Err(Error::NonPositiveRadius(r));
    }
    let tree = engine.shortest_path_tree(c)?;
    Ok(disk_boundary_from_tree(engine, &tree, r))
}

/// Same as [`disk_boundary`] with a precomputed tree for the center.
pub fn disk_boundary_from_tree(engine: &GeodesicEngine, tree: &ShortestPathTree, r: f64) -> DiskBoundary {
    let poly = engine.polygon();
    let eps = engine.eps();
    let tol = residual_tol(r);
    let c = tree.source;

    // (anchor point, anchor vertex, residual radius)
    let mut anchors: Vec<(Point2, Option<usize>, f64)> = vec![(c, None, r)];
    for &a in engine.reflex_vertices() {
        if Some(a) == tree.source_vertex {
            continue;
        }
        let o = tree.dist[a];
        if o.is_finite() && o < r - tol {
            anchors.push((poly.vertex(a), Some(a), r - o));
        }
    }

    let distance_from_center = |q: Point2| {
        let prof = engine.profile_unchecked(q);
        tree.distance_to(engine, &prof)
    };

    let mut arcs = Vec::new();
    for (k, &(anchor, vertex, res)) in anchors.iter().enumerate() {
        let mut angles: Vec<f64> = Vec::new();
        for e in poly.edges() {
            for (t, _) in circle_segment(anchor, res, e.a, e.b, eps) {
                angles.push(normalize_angle((e.point_at(t) - anchor).angle()));
            }
        }
        for (j, &(other, _, ores)) in anchors.iter().enumerate() {
            if j != k {
                for (p, _) in circle_circle(anchor, res, other, ores, tol) {
                    angles.push(normalize_angle((p - anchor).angle()));
                }
            }
        }
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        let intervals: Vec<(f64, f64)> = if angles.is_empty() {
            vec![(0.0, TAU)]
        } else {
            (0..angles.len())
                .map(|i| {
                    let s = angles[i];
                    let e = if i + 1 < angles.len() { angles[i + 1] } else { angles[0] + TAU };
                    (s, e)
                })
                .collect()
        };
        let keep: Vec<bool> = intervals
            .iter()
            .map(|&(s, e)| {
                if (e - s) * res <= tol {
                    return false;
                }
                let m = Point2::from_polar(anchor, res, 0.5 * (s + e));
                poly.contains(m, eps)
                    && engine.visible(anchor, m)
                    && distance_from_center(m) >= r - tol
            })
            .collect();
        // merge consecutive kept intervals
        let m = intervals.len();
        if keep.iter().all(|&k| k) {
            let s = intervals[0].0;
            arcs.push(Arc {
                anchor,
                anchor_vertex: vertex,
                residual_radius: res,
                start_angle: normalize_angle(s),
                end_angle: normalize_angle(s) + TAU,
            });
            continue;
        }
        let first_gap = keep.iter().position(|&k| !k).expect("some interval dropped");
        let mut i = 0;
        while i < m {
            let idx = (first_gap + 1 + i) % m;
            if !keep[idx] {
                i += 1;
                continue;
            }
            let start = intervals[idx].0;
            let mut sweep = intervals[idx].1 - intervals[idx].0;
            let mut j = i + 1;
            while j < m && keep[(first_gap + 1 + j) % m] {
                let id = (first_gap + 1 + j) % m;
                sweep += intervals[id].1 - intervals[id].0;
                j += 1;
            }
            let s = normalize_angle(start);
            arcs.push(Arc {
                anchor,
                anchor_vertex: vertex,
                residual_radius: res,
                start_angle: s,
                end_angle: s + sweep,
            });
            i = j;
        }
    }

    let mut boundary_portions = Vec::new();
    for e in poly.edges() {
        let mut ts = vec![0.0, 1.0];
        for &(anchor, _, res) in &anchors {
            ts.extend(circle_segment(anchor, res, e.a, e.b, eps).into_iter().map(|x| x.0));
        }
        ts.sort_by(f64::total_cmp);
        let len = e.length();
        let mut current: Option<(f64, f64)> = None;
        for w in ts.windows(2) {
            if (w[1] - w[0]) * len <= tol {
                continue;
            }
            let inside = distance_from_center(e.point_at(0.5 * (w[0] + w[1]))) <= r + tol;
            match (&mut current, inside) {
                (Some(cur), true) => cur.1 = w[1],
                (None, true) => current = Some((w[0], w[1])),
                (Some(cur), false) => {
                    boundary_portions.push((e.index, e.point_at(cur.0), e.point_at(cur.1)));
                    current = None;
                }
                (None, false) => {}
            }
        }
        if let Some(cur) = current {
            boundary_portions.push((e.index, e.point_at(cur.0), e.point_at(cur.1)));
        }
    }
    DiskBoundary {
        center: c,
        radius: r,
        arcs,
        boundary_portions: boundary_portions
            .into_iter()
            .map(|(edge, a, b)| BoundarySegment { edge, a, b })
            .collect(),
    }
}

/// Closed-disk membership with tolerance `eps` of the engine.
pub fn disk_contains(engine: &GeodesicEngine, disk: &GeodesicDisk, q: Point2) -> Result<bool> {
    Ok(engine.distance(disk.center, q)? <= disk.radius + engine.eps())
}

/// Intersection points of two disk boundaries. Arc–arc and arc–segment pairs
/// are intersected; two polygon-boundary pieces never cross transversally.
pub fn boundary_intersections(b1: &DiskBoundary, b2: &DiskBoundary) -> Vec<BoundaryPoint> {
    pieces_intersections(&b1.pieces(), &b2.pieces(), residual_tol(b1.radius.max(b2.radius)))
}

pub fn pieces_intersections(p1: &[Piece], p2: &[Piece], tol: f64) -> Vec<BoundaryPoint> {
    let mut out: Vec<BoundaryPoint> = Vec::new();
    for x in p1 {
        for y in p2 {
            for bp in piece_pair(x, y, tol) {
                if let Some(existing) = out.iter_mut().find(|o| o.point.dist(bp.point) <= tol * 10.0) {
                    existing.tangential &= bp.tangential;
                } else {
                    out.push(bp);
                }
            }
        }
    }
    out
}

fn piece_pair(x: &Piece, y: &Piece, tol: f64) -> Vec<BoundaryPoint> {
    match (x, y) {
        (Piece::Arc(a), Piece::Arc(b)) => circle_circle(a.anchor, a.residual_radius, b.anchor, b.residual_radius, tol)
            .into_iter()
            .filter(|(p, _)| a.contains_point(*p, tol * 10.0) && b.contains_point(*p, tol * 10.0))
            .map(|(point, tangential)| BoundaryPoint { point, tangential })
            .collect(),
        (Piece::Arc(a), Piece::Segment(s)) | (Piece::Segment(s), Piece::Arc(a)) => {
            circle_segment(a.anchor, a.residual_radius, s.a, s.b, tol)
                .into_iter()
                .map(|(t, tangential)| BoundaryPoint {
                    point: s.point_at(t),
                    tangential,
                })
                .filter(|bp| a.contains_point(bp.point, tol * 10.0))
                .collect()
        }
        (Piece::Segment(_), Piece::Segment(_)) => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn square() -> GeodesicEngine {
        GeodesicEngine::new(Polygon::from_coords(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]).unwrap())
    }

    #[test]
    fn small_disk_is_full_circle() {
        let b = disk_boundary(&square(), pt(0.5, 0.5), 0.3).unwrap();
        assert_eq!(b.arcs.len(), 1);
        assert!(b.arcs[0].is_full_circle());
        assert!(b.boundary_portions.is_empty());
        assert!((b.area() - std::f64::consts::PI * 0.09).abs() < 1e-12);
    }

    #[test]
    fn clipped_disk_alternates() {
        let b = disk_boundary(&square(), pt(0.5, 0.5), 0.6).unwrap();
        assert_eq!(b.arcs.len(), 4);
        assert_eq!(b.boundary_portions.len(), 4);
        let dx = (0.36f64 - 0.25).sqrt();
        let bottom = b.boundary_portions.iter().find(|s| s.a.y == 0.0 && s.b.y == 0.0).unwrap();
        assert!((bottom.a.x - (0.5 - dx)).abs() < 1e-12);
        assert!((bottom.b.x - (0.5 + dx)).abs() < 1e-12);
        assert_eq!(b.loops(1e-9).len(), 1);
    }

    #[test]
    fn l_polygon_reflex_arc() {
        let e = GeodesicEngine::new(
            Polygon::from_coords(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]).unwrap(),
        );
        let b = disk_boundary(&e, pt(2., 0.5), 1.5).unwrap();
        let reflex = b.arcs.iter().find(|a| a.anchor == pt(1., 1.)).expect("arc about (1,1)");
        assert!((reflex.residual_radius - (1.5 - 1.25f64.sqrt())).abs() < 1e-12);
        for arc in &b.arcs {
            for k in 0..=20 {
                let p = arc.point_at(k as f64 / 20.0);
                let d = e.distance(pt(2., 0.5), p).unwrap();
                assert!((d - 1.5).abs() < 1e-9, "{p}: {d}");
            }
        }
    }

    #[test]
    fn radius_must_be_positive() {
        assert!(matches!(
            disk_boundary(&square(), pt(0.5, 0.5), 0.0),
            Err(Error::NonPositiveRadius(_))
        ));
    }

    #[test]
    fn circle_boundaries_intersect() {
        let e = GeodesicEngine::new(Polygon::from_coords(&[(-5., -5.), (5., -5.), (5., 5.), (-5., 5.)]).unwrap());
        let a = disk_boundary(&e, pt(0., 0.), 1.0).unwrap();
        let b = disk_boundary(&e, pt(1., 0.), 1.0).unwrap();
        let pts = boundary_intersections(&a, &b);
        assert_eq!(pts.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(pts.iter().any(|p| p.point.approx_eq(pt(0.5, h), 1e-12)));
        assert!(pts.iter().any(|p| p.point.approx_eq(pt(0.5, -h), 1e-12)));
        let c = disk_boundary(&e, pt(0., 0.), 0.5).unwrap();
        let d = disk_boundary(&e, pt(1., 0.), 0.5).unwrap();
        let t = boundary_intersections(&c, &d);
        assert_eq!(t.len(), 1);
        assert!(t[0].tangential);
        let far = disk_boundary(&e, pt(4., 4.), 0.5).unwrap();
        assert!(boundary_intersections(&c, &far).is_empty());
    }
}
