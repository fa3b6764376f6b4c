//! Visibility inside a closed polygon.
//!
//! Grazing contact with the boundary is allowed: a segment that runs along an
//! edge or touches a vertex is still visible as long as it never leaves the
//! closed polygon.

use std::f64::consts::TAU;

use super::point::{normalize_angle, orient, point_segment_distance, segments_cross_properly, Point2};
use super::polygon::Polygon;

/// Whether the closed segment `pq` lies inside the closed polygon.
pub fn segment_visible(poly: &Polygon, p: Point2, q: Point2, eps: f64) -> bool {
    let len = p.dist(q);
    if len <= eps {
        return poly.contains(p, eps);
    }
    let dir = q - p;
    let mut cuts: Vec<f64> = Vec::new();
    for e in poly.edges() {
        if segments_cross_properly(p, q, e.a, e.b, eps) {
            return false;
        }
        let (d, t) = point_segment_distance(e.a, p, q);
        if d <= eps {
            let along = t * len;
            if along > eps && len - along > eps {
                cuts.push(t);
            }
        }
    }
    if cuts.is_empty() {
        return poly.contains(p.midpoint(q), eps);
    }
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).all(|w| {
        if (w[1] - w[0]) * len <= eps {
            return true;
        }
        poly.contains(p + dir * (0.5 * (w[0] + w[1])), eps)
    })
}

/// Vertex visibility graph with Euclidean edge weights.
///
/// Nodes `0..n` are the polygon vertices, followed by any extra query points.
#[derive(Debug, Clone)]
pub struct VisibilityGraph {
    pub nodes: Vec<Point2>,
    pub adjacency: Vec<Vec<(usize, f64)>>,
}

impl VisibilityGraph {
    pub fn build(poly: &Polygon, extra: &[Point2], eps: f64) -> Self {
        let nodes: Vec<Point2> = poly.vertices().iter().copied().chain(extra.iter().copied()).collect();
        let m = nodes.len();
        let mut adjacency = vec![Vec::new(); m];
        for i in 0..m {
            for j in (i + 1)..m {
                let visible = if i < poly.n() && j < poly.n() && (poly.next(i) == j || poly.next(j) == i) {
                    true
                } else {
                    segment_visible(poly, nodes[i], nodes[j], eps)
                };
                if visible {
                    let w = nodes[i].dist(nodes[j]);
                    adjacency[i].push((j, w));
                    adjacency[j].push((i, w));
                }
            }
        }
        Self { nodes, adjacency }
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adjacency[u].iter().find(|&&(w, _)| w == v).map(|&(_, d)| d)
    }

    /// Multiplies the weight of edge `{u, v}`; returns false when absent.
    pub fn scale_edge(&mut self, u: usize, v: usize, factor: f64) -> bool {
        let mut found = false;
        for (a, b) in [(u, v), (v, u)] {
            for entry in self.adjacency[a].iter_mut() {
                if entry.0 == b {
                    entry.1 *= factor;
                    found = true;
                }
            }
        }
        found
    }
}

/// First boundary hit of the ray `origin + t·dir`, `t > min_t`, skipping edges
/// incident to vertex `skip`.
pub fn cast_ray(poly: &Polygon, origin: Point2, dir: Point2, skip: Option<usize>, eps: f64) -> Option<Point2> {
    let d = dir.normalized();
    let mut best = f64::INFINITY;
    for e in poly.edges() {
        if let Some(s) = skip {
            if e.from == s || e.to == s {
                continue;
            }
        }
        let seg = e.b - e.a;
        let denom = d.cross(seg);
        if denom.abs() < 1e-15 {
            // parallel: only collinear overlap matters; take the nearer endpoint ahead
            if signed_dist_abs(e.a, origin, d) <= eps {
                for p in [e.a, e.b] {
                    let t = (p - origin).dot(d);
                    if t > eps && t < best {
                        best = t;
                    }
                }
            }
            continue;
        }
        let w = e.a - origin;
        let t = w.cross(seg) / denom;
        let u = w.cross(d) / denom;
        let tol = eps / seg.norm();
        if t > eps && u >= -tol && u <= 1.0 + tol && t < best {
            best = t;
        }
    }
    best.is_finite().then(|| origin + d * best)
}

fn signed_dist_abs(p: Point2, origin: Point2, dir: Point2) -> f64 {
    dir.cross(p - origin).abs()
}

/// Where `a` sits on the boundary: the reference direction along which the
/// interior begins and the angular extent of the interior.
fn boundary_frame(poly: &Polygon, a: Point2, eps: f64) -> Option<(f64, f64, Option<usize>)> {
    for i in 0..poly.n() {
        if poly.vertex(i).dist(a) <= eps {
            let v = poly.vertex(i);
            let out = poly.vertex(poly.next(i)) - v;
            let back = poly.vertex(poly.prev(i)) - v;
            let start = out.angle();
            let extent = normalize_angle(back.angle() - start);
            return Some((start, extent, Some(i)));
        }
    }
    for e in poly.edges() {
        if point_segment_distance(a, e.a, e.b).0 <= eps {
            return Some(((e.b - e.a).angle(), std::f64::consts::PI, None));
        }
    }
    None
}

/// Visibility polygon of a point in the closed polygon, as a star-shaped ring
/// around `a` in counterclockwise order. When `a` is on the boundary, `a`
/// itself is the first vertex.
pub fn visibility_polygon(poly: &Polygon, a: Point2, eps: f64) -> Vec<Point2> {
    let frame = boundary_frame(poly, a, eps);
    let (start, extent, at_vertex) = frame.unwrap_or((0.0, TAU, None));
    // (angle, tie-break rank, point)
    let mut events: Vec<(f64, u8, Point2)> = Vec::new();
    for w_idx in 0..poly.n() {
        let w = poly.vertex(w_idx);
        if w.dist(a) <= eps || !segment_visible(poly, a, w, eps) {
            continue;
        }
        let ang = normalize_angle((w - a).angle() - start);
        let ang = if frame.is_some() && ang > extent + 1e-12 && ang > TAU - 1e-12 { 0.0 } else { ang };
        let s1 = orient(a, w, poly.vertex(poly.prev(w_idx)));
        let s2 = orient(a, w, poly.vertex(poly.next(w_idx)));
        let tol = eps * a.dist(w).max(1.0);
        let side = if s1 >= -tol && s2 >= -tol && (s1 > tol || s2 > tol) {
            1
        } else if s1 <= tol && s2 <= tol && (s1 < -tol || s2 < -tol) {
            -1
        } else {
            0
        };
        // grazing vertex: the sight line continues past w
        let beyond = if side != 0 {
            let probe = w + (w - a).normalized() * (10.0 * eps).max(1e-7);
            if poly.contains(probe, eps * 0.1) {
                cast_ray(poly, w, w - a, Some(w_idx), eps)
            } else {
                None
            }
        } else {
            None
        };
        match (beyond, side) {
            (Some(h), 1) => {
                events.push((ang, 0, h));
                events.push((ang, 1, w));
            }
            (Some(h), _) => {
                events.push((ang, 0, w));
                events.push((ang, 1, h));
            }
            (None, _) => events.push((ang, 0, w)),
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut ring: Vec<Point2> = Vec::with_capacity(events.len() + 1);
    if frame.is_some() {
        ring.push(a);
    }
    let _ = at_vertex;
    for (_, _, p) in events {
        if ring.last().is_none_or(|l: &Point2| l.dist(p) > eps) {
            ring.push(p);
        }
    }
    if ring.len() > 1 && ring[0].dist(ring[ring.len() - 1]) <= eps {
        ring.pop();
    }
    remove_collinear(ring, eps)
}

fn remove_collinear(mut ring: Vec<Point2>, eps: f64) -> Vec<Point2> {
    let mut changed = true;
    while changed && ring.len() > 3 {
        changed = false;
        let n = ring.len();
        for i in 0..n {
            let (p, c, nx) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
            let base = p.dist(nx).max(1e-300);
            if (orient(p, c, nx) / base).abs() <= eps && (c - p).dot(nx - c) >= 0.0 {
                ring.remove(i);
                changed = true;
                break;
            }
        }
    }
    ring
}

/// Area of a simple ring (positive when counterclockwise).
pub fn ring_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    (0..n).map(|i| ring[i].cross(ring[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Crossing-number membership for a single ring, boundary inclusive.
pub fn ring_contains(ring: &[Point2], q: Point2, eps: f64) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if point_segment_distance(q, ring[i], ring[(i + 1) % n]).0 <= eps {
            return true;
        }
    }
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

/// Clips a ring to the closed half-plane left of the directed line `a -> b`.
pub fn clip_half_plane(ring: &[Point2], a: Point2, b: Point2) -> Vec<Point2> {
    let n = ring.len();
    let mut out = Vec::with_capacity(n + 2);
    let side = |p: Point2| orient(a, b, p);
    for i in 0..n {
        let cur = ring[i];
        let nxt = ring[(i + 1) % n];
        let (sc, sn) = (side(cur), side(nxt));
        if sc >= 0.0 {
            out.push(cur);
        }
        if (sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0) {
            let t = sc / (sc - sn);
            out.push(cur.lerp(nxt, t));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::EPS_GEOM;

    fn l_polygon() -> Polygon {
        Polygon::from_coords(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]).unwrap()
    }

    #[test]
    fn segment_visibility_in_l() {
        let p = l_polygon();
        let a = Point2::new(2.0, 0.5);
        assert!(!segment_visible(&p, a, Point2::new(0.5, 2.0), EPS_GEOM));
        assert!(segment_visible(&p, a, Point2::new(1.0, 1.0), EPS_GEOM));
        // along the boundary
        assert!(segment_visible(&p, Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), EPS_GEOM));
        // through the reflex corner, grazing on both sides
        assert!(segment_visible(&p, Point2::new(2.0, 0.0), Point2::new(0.0, 2.0), EPS_GEOM));
        // exits through the notch
        assert!(!segment_visible(&p, Point2::new(2.0, 1.0), Point2::new(1.0, 2.0), EPS_GEOM));
    }

    #[test]
    fn visibility_graph_of_square_is_complete() {
        let sq = Polygon::from_coords(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]).unwrap();
        let g = VisibilityGraph::build(&sq, &[], EPS_GEOM);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn visibility_polygon_of_convex_is_itself() {
        let sq = Polygon::from_coords(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]).unwrap();
        let v = visibility_polygon(&sq, Point2::new(0.3, 0.6), EPS_GEOM);
        assert_eq!(v.len(), 4);
        assert!((ring_area(&v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn visibility_polygon_in_l() {
        let p = l_polygon();
        let v = visibility_polygon(&p, Point2::new(2.0, 0.5), EPS_GEOM);
        // visible: the lower bar plus the triangle cut by the sight line through (1,1)
        // sight line from (2,0.5) through (1,1) hits x=0 at y=1.5
        let expected = 2.0 + 0.5 * 1.0 * 0.5;
        assert!((ring_area(&v) - expected).abs() < 1e-12, "{v:?}");
        let from_reflex = visibility_polygon(&p, Point2::new(1.0, 1.0), EPS_GEOM);
        assert!((ring_area(&from_reflex) - 3.0).abs() < 1e-12, "{from_reflex:?}");
    }

    #[test]
    fn half_plane_clip() {
        let sq = vec![
            Point2::new(0., 0.),
            Point2::new(1., 0.),
            Point2::new(1., 1.),
            Point2::new(0., 1.),
        ];
        let c = clip_half_plane(&sq, Point2::new(0.5, 0.0), Point2::new(0.5, 1.0));
        assert!((ring_area(&c) - 0.5).abs() < 1e-15);
    }
}
