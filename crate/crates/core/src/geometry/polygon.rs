use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::point::{
    orient, point_segment_distance, segments_cross_properly, segments_touch, Point2, EPS_GEOM,
};
use crate::error::PolygonError;

/// Raw ring coordinates as read from a polygon document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PolygonRings {
    pub outer: Vec<Point2>,
    #[serde(default)]
    pub holes: Vec<Vec<Point2>>,
}

/// A validated polygon: one counterclockwise outer ring and any number of
/// clockwise holes. The interior is always to the left of every edge.
///
/// Vertices of all rings are stored in one flat array, outer ring first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
    rings: Vec<Range<usize>>,
    ring_of: Vec<usize>,
    reflex: Vec<bool>,
}

/// One directed boundary edge, `vertices[from] -> vertices[to]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub index: usize,
    pub from: usize,
    pub to: usize,
    pub a: Point2,
    pub b: Point2,
}

impl Edge {
    pub fn point_at(&self, t: f64) -> Point2 {
        self.a.lerp(self.b, t)
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

fn signed_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| ring[i].cross(ring[(i + 1) % n]))
        .sum::<f64>()
        * 0.5
}

fn check_ring(ring: &[Point2], idx: usize) -> Result<Vec<Point2>, PolygonError> {
    let degenerate = |reason: &str| PolygonError::DegenerateRing {
        ring: idx,
        reason: reason.to_string(),
    };
    let mut pts = ring.to_vec();
    if pts.iter().any(|p| !p.is_finite()) {
        return Err(degenerate("non-finite coordinate"));
    }
    if pts.len() > 1 && pts[0].approx_eq(pts[pts.len() - 1], EPS_GEOM) {
        pts.pop();
    }
    if pts.len() < 3 {
        return Err(degenerate("fewer than 3 vertices"));
    }
    let n = pts.len();
    let far = pts
        .iter()
        .copied()
        .max_by(|a, b| pts[0].dist(*a).total_cmp(&pts[0].dist(*b)))
        .expect("ring has vertices");
    if pts
        .iter()
        .all(|&p| point_segment_distance(p, pts[0], far).0 <= EPS_GEOM)
    {
        return Err(degenerate("zero area"));
    }
    for i in 0..n {
        if pts[i].approx_eq(pts[(i + 1) % n], EPS_GEOM) {
            return Err(degenerate("consecutive vertices coincide"));
        }
    }
    // non-adjacent edges must be disjoint; adjacent edges may not fold back
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                let (other_a, other_b) = if j == i + 1 { (a, d) } else { (b, c) };
                if point_segment_distance(other_b, a, b).0 <= EPS_GEOM
                    || point_segment_distance(other_a, c, d).0 <= EPS_GEOM
                {
                    return Err(PolygonError::SelfIntersection { ring: idx });
                }
            } else if segments_touch(a, b, c, d, EPS_GEOM) {
                return Err(PolygonError::SelfIntersection { ring: idx });
            }
        }
    }
    if signed_area(&pts).abs() <= EPS_GEOM {
        return Err(degenerate("zero area"));
    }
    Ok(pts)
}

fn ring_contains_strict(ring: &[Point2], q: Point2) -> bool {
    let n = ring.len();
    for i in 0..n {
        if point_segment_distance(q, ring[i], ring[(i + 1) % n]).0 <= EPS_GEOM {
            return false;
        }
    }
    crossing_parity(ring, q)
}

fn crossing_parity(ring: &[Point2], q: Point2) -> bool {
    let n = ring.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if q.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn rings_touch(r1: &[Point2], r2: &[Point2]) -> bool {
    let (n1, n2) = (r1.len(), r2.len());
    for i in 0..n1 {
        for j in 0..n2 {
            if segments_touch(r1[i], r1[(i + 1) % n1], r2[j], r2[(j + 1) % n2], EPS_GEOM) {
                return true;
            }
        }
    }
    false
}

impl Polygon {
    /// Validates rings and normalizes orientation (outer CCW, holes CW).
    pub fn new(outer: Vec<Point2>, holes: Vec<Vec<Point2>>) -> Result<Self, PolygonError> {
        let mut outer = check_ring(&outer, 0)?;
        if signed_area(&outer) < 0.0 {
            outer.reverse();
        }
        let mut checked: Vec<Vec<Point2>> = Vec::with_capacity(holes.len());
        for (h, hole) in holes.iter().enumerate() {
            let ring = h + 1;
            let mut pts = check_ring(hole, ring)?;
            if signed_area(&pts) > 0.0 {
                pts.reverse();
            }
            if rings_touch(&outer, &pts) || !pts.iter().all(|&p| ring_contains_strict(&outer, p)) {
                return Err(PolygonError::HoleOutsideOuter { ring });
            }
            for (o, other) in checked.iter().enumerate() {
                if rings_touch(other, &pts)
                    || crossing_parity(other, pts[0])
                    || crossing_parity(&pts, other[0])
                {
                    return Err(PolygonError::HolesOverlap {
                        ring,
                        other: o + 1,
                    });
                }
            }
            checked.push(pts);
        }
        Ok(Self::from_normalized(outer, checked))
    }

    pub fn from_rings(rings: &PolygonRings) -> Result<Self, PolygonError> {
        Self::new(rings.outer.clone(), rings.holes.clone())
    }

    /// Builds a polygon from an outer ring given as coordinate pairs.
    pub fn from_coords(outer: &[(f64, f64)]) -> Result<Self, PolygonError> {
        Self::new(outer.iter().map(|&p| p.into()).collect(), Vec::new())
    }

    fn from_normalized(outer: Vec<Point2>, holes: Vec<Vec<Point2>>) -> Self {
        let mut vertices = Vec::new();
        let mut rings = Vec::new();
        let mut ring_of = Vec::new();
        for (r, ring) in std::iter::once(outer).chain(holes).enumerate() {
            let start = vertices.len();
            ring_of.extend(std::iter::repeat_n(r, ring.len()));
            vertices.extend(ring);
            rings.push(start..vertices.len());
        }
        let mut poly = Self {
            vertices,
            rings,
            ring_of,
            reflex: Vec::new(),
        };
        poly.reflex = (0..poly.n())
            .map(|i| {
                let (p, c, nx) = (poly.vertex(poly.prev(i)), poly.vertex(i), poly.vertex(poly.next(i)));
                orient(p, c, nx) < 0.0
            })
            .collect();
        poly
    }

    pub fn rings(&self) -> PolygonRings {
        PolygonRings {
            outer: self.ring(0).to_vec(),
            holes: (1..self.rings.len()).map(|r| self.ring(r).to_vec()).collect(),
        }
    }

    /// Total vertex count over all rings.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn ring_count(&self) -> usize {
        self.rings.len()
    }

    pub fn ring(&self, r: usize) -> &[Point2] {
        &self.vertices[self.rings[r].clone()]
    }

    pub fn ring_range(&self, r: usize) -> Range<usize> {
        self.rings[r].clone()
    }

    pub fn outer(&self) -> &[Point2] {
        self.ring(0)
    }

    pub fn hole_count(&self) -> usize {
        self.rings.len() - 1
    }

    pub fn has_holes(&self) -> bool {
        self.rings.len() > 1
    }

    #[inline]
    pub fn next(&self, i: usize) -> usize {
        let r = &self.rings[self.ring_of[i]];
        if i + 1 == r.end {
            r.start
        } else {
            i + 1
        }
    }

    #[inline]
    pub fn prev(&self, i: usize) -> usize {
        let r = &self.rings[self.ring_of[i]];
        if i == r.start {
            r.end - 1
        } else {
            i - 1
        }
    }

    /// Interior angle at vertex `i` exceeds π.
    #[inline]
    pub fn is_reflex(&self, i: usize) -> bool {
        self.reflex[i]
    }

    pub fn reflex_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.reflex[i]).collect()
    }

    /// Vertices with interior angle strictly below π.
    pub fn convex_vertices(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| orient(self.vertex(self.prev(i)), self.vertex(i), self.vertex(self.next(i))) > 0.0)
            .collect()
    }

    /// Edge `i` runs from vertex `i` to its ring successor.
    #[inline]
    pub fn edge(&self, i: usize) -> Edge {
        let j = self.next(i);
        Edge {
            index: i,
            from: i,
            to: j,
            a: self.vertices[i],
            b: self.vertices[j],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        (0..self.rings.len()).map(|r| signed_area(self.ring(r))).sum()
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.outer() {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Length of the bounding-box diagonal, an upper bound on the Euclidean diameter.
    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bbox();
        lo.dist(hi)
    }

    pub fn boundary_distance(&self, q: Point2) -> f64 {
        self.edges()
            .map(|e| point_segment_distance(q, e.a, e.b).0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn on_boundary(&self, q: Point2, eps: f64) -> bool {
        self.edges()
            .any(|e| point_segment_distance(q, e.a, e.b).0 <= eps)
    }

    /// Closed-polygon membership: boundary points count as inside.
    pub fn contains(&self, q: Point2, eps: f64) -> bool {
        if self.on_boundary(q, eps) {
            return true;
        }
        self.contains_open(q)
    }

    /// Crossing-number test without the boundary tolerance.
    pub fn contains_open(&self, q: Point2) -> bool {
        let mut inside = false;
        for r in 0..self.rings.len() {
            if crossing_parity(self.ring(r), q) {
                inside = !inside;
            }
        }
        inside
    }

    /// True when the segment crosses some boundary edge transversally.
    pub fn crosses_boundary(&self, a: Point2, b: Point2, eps: f64) -> bool {
        self.edges()
            .any(|e| segments_cross_properly(a, b, e.a, e.b, eps))
    }

    /// Uniformly scaled copy about the origin.
    pub fn scaled(&self, s: f64) -> Self {
        let rings = self.rings();
        Self::new(
            rings.outer.iter().map(|&p| p * s).collect(),
            rings
                .holes
                .iter()
                .map(|h| h.iter().map(|&p| p * s).collect())
                .collect(),
        )
        .expect("scaling preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[(f64, f64)]) -> Vec<Point2> {
        c.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn unit_square_ccw() {
        let p = Polygon::new(pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]), vec![]).unwrap();
        assert_eq!(p.n(), 4);
        assert!(!p.has_holes());
        assert!((p.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn clockwise_square_is_reoriented() {
        let p = Polygon::new(pts(&[(0., 0.), (0., 1.), (1., 1.), (1., 0.)]), vec![]).unwrap();
        assert!(p.area() > 0.0);
        assert_eq!(p.vertex(1), Point2::new(1.0, 1.0));
    }

    #[test]
    fn bow_tie_rejected() {
        let e = Polygon::new(pts(&[(0., 0.), (1., 1.), (1., 0.), (0., 1.)]), vec![]).unwrap_err();
        assert_eq!(e, PolygonError::SelfIntersection { ring: 0 });
    }

    #[test]
    fn hole_errors_name_the_ring() {
        let outer = pts(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.)]);
        let outside = pts(&[(5., 5.), (6., 5.), (6., 6.)]);
        let e = Polygon::new(outer.clone(), vec![outside]).unwrap_err();
        assert_eq!(e, PolygonError::HoleOutsideOuter { ring: 1 });

        let h1 = pts(&[(1., 1.), (2., 1.), (2., 2.), (1., 2.)]);
        let h2 = pts(&[(1.5, 1.5), (3., 1.5), (3., 3.), (1.5, 3.)]);
        let e = Polygon::new(outer.clone(), vec![h1.clone(), h2]).unwrap_err();
        assert_eq!(e, PolygonError::HolesOverlap { ring: 2, other: 1 });

        let p = Polygon::new(outer, vec![h1]).unwrap();
        assert_eq!(p.n(), 8);
        assert!((p.area() - 15.0).abs() < 1e-12);
        // hole vertices are reflex for the domain
        assert!((4..8).all(|i| p.is_reflex(i)));
    }

    #[test]
    fn degenerate_rings() {
        assert!(matches!(
            Polygon::new(pts(&[(0., 0.), (1., 0.)]), vec![]),
            Err(PolygonError::DegenerateRing { ring: 0, .. })
        ));
        assert!(matches!(
            Polygon::new(pts(&[(0., 0.), (1., 0.), (1., 0.), (0., 1.)]), vec![]),
            Err(PolygonError::DegenerateRing { ring: 0, .. })
        ));
        assert!(matches!(
            Polygon::new(pts(&[(0., 0.), (1., 0.), (2., 0.)]), vec![]),
            Err(PolygonError::DegenerateRing { ring: 0, .. })
        ));
    }

    #[test]
    fn closing_duplicate_is_dropped() {
        let p = Polygon::new(pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 0.)]), vec![]).unwrap();
        assert_eq!(p.n(), 3);
    }

    #[test]
    fn membership_is_closed() {
        let p = Polygon::new(pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]), vec![]).unwrap();
        assert!(p.contains(Point2::new(0.0, 0.5), EPS_GEOM));
        assert!(p.contains(Point2::new(1.0, 1.0), EPS_GEOM));
        assert!(!p.contains(Point2::new(1.0 + 1e-6, 0.5), EPS_GEOM));
    }
}
