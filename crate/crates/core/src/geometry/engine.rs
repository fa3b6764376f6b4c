//! Geodesic distances inside a polygon.
//!
//! Shortest paths bend only at reflex vertices, so all queries reduce to
//! all-pairs vertex distances on the visibility graph plus direct visibility
//! from the query points.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::point::{Point2, EPS_GEOM};
use super::polygon::Polygon;
use super::visibility::{segment_visible, VisibilityGraph};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Polyline realizing a shortest path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    pub waypoints: Vec<Point2>,
    pub length: f64,
}

impl GeodesicPath {
    pub fn polyline_length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// Predecessor of a vertex in a shortest-path tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parent {
    Source,
    Vertex(usize),
    Unreachable,
}

/// How a query point sees the polygon's reflex vertices.
///
/// Building a profile costs one visibility test per reflex vertex; reuse it
/// when the same point takes part in many queries.
#[derive(Debug, Clone)]
pub struct PointProfile {
    pub point: Point2,
    /// Index of the polygon vertex at this position, if any.
    pub vertex: Option<usize>,
    /// `(reflex vertex, Euclidean distance)` for every visible reflex vertex.
    pub visible_reflex: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
struct Fault {
    u: usize,
    v: usize,
    factor: f64,
}

/// Immutable distance oracle for one polygon; safe to share across threads.
#[derive(Debug, Clone)]
pub struct GeodesicEngine {
    poly: Polygon,
    eps: f64,
    graph: VisibilityGraph,
    reflex: Vec<usize>,
    /// Row-major `n × n` vertex-to-vertex geodesic distances.
    vdist: Vec<f64>,
    /// `vpred[i*n + j]`: predecessor of `j` on the path from `i`.
    vpred: Vec<u32>,
    fault: Option<Fault>,
}

impl GeodesicEngine {
    pub fn new(poly: Polygon) -> Self {
        Self::with_eps(poly, EPS_GEOM)
    }

    pub fn with_eps(poly: Polygon, eps: f64) -> Self {
        let graph = VisibilityGraph::build(&poly, &[], eps);
        Self::from_graph(poly, eps, graph, None)
    }

    fn from_graph(poly: Polygon, eps: f64, graph: VisibilityGraph, fault: Option<Fault>) -> Self {
        let n = poly.n();
        let reflex = poly.reflex_vertices();
        let is_reflex: Vec<bool> = (0..n).map(|i| poly.is_reflex(i)).collect();
        let rows: Vec<(Vec<f64>, Vec<u32>)> = (0..n)
            .into_par_iter()
            .map(|s| dijkstra(&graph, &is_reflex, s))
            .collect();
        let mut vdist = Vec::with_capacity(n * n);
        let mut vpred = Vec::with_capacity(n * n);
        for (d, p) in rows {
            vdist.extend(d);
            vpred.extend(p);
        }
        Self {
            poly,
            eps,
            graph,
            reflex,
            vdist,
            vpred,
            fault,
        }
    }

    /// Copy of the engine with visibility edge `{u, v}` reweighted by `factor`.
    ///
    /// Used to check that the property suites catch a corrupted metric.
    pub fn with_edge_weight_factor(&self, u: usize, v: usize, factor: f64) -> Result<Self> {
        let mut graph = self.graph.clone();
        if !graph.scale_edge(u, v, factor) {
            return Err(Error::InvalidParameter {
                name: "edge",
                reason: format!("vertices {u} and {v} are not mutually visible"),
            });
        }
        Ok(Self::from_graph(
            self.poly.clone(),
            self.eps,
            graph,
            Some(Fault { u, v, factor }),
        ))
    }

    pub fn polygon(&self) -> &Polygon {
        &self.poly
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn visibility_graph(&self) -> &VisibilityGraph {
        &self.graph
    }

    pub fn reflex_vertices(&self) -> &[usize] {
        &self.reflex
    }

    /// The injected edge reweighting, as `(u, v, factor)`.
    pub fn fault(&self) -> Option<(usize, usize, f64)> {
        self.fault.as_ref().map(|f| (f.u, f.v, f.factor))
    }

    #[inline]
    pub fn vertex_distance(&self, i: usize, j: usize) -> f64 {
        self.vdist[i * self.poly.n() + j]
    }

    pub fn visible(&self, p: Point2, q: Point2) -> bool {
        segment_visible(&self.poly, p, q, self.eps)
    }

    pub fn check_inside(&self, p: Point2) -> Result<()> {
        if p.is_finite() && self.poly.contains(p, self.eps) {
            Ok(())
        } else {
            Err(Error::PointOutsidePolygon { x: p.x, y: p.y })
        }
    }

    fn vertex_at(&self, p: Point2) -> Option<usize> {
        let v = self.poly.vertices();
        (0..v.len()).find(|&i| v[i].dist(p) <= self.eps)
    }

    pub fn profile(&self, p: Point2) -> Result<PointProfile> {
        self.check_inside(p)?;
        Ok(self.profile_unchecked(p))
    }

    pub fn profile_unchecked(&self, p: Point2) -> PointProfile {
        let vertex = self.vertex_at(p);
        let point = vertex.map_or(p, |i| self.poly.vertex(i));
        let visible_reflex = self
            .reflex
            .iter()
            .filter_map(|&a| {
                let va = self.poly.vertex(a);
                let visible = Some(a) == vertex
                    || vertex.is_some_and(|i| self.graph.weight(i, a).is_some())
                    || (vertex.is_none() && self.visible(point, va));
                visible.then(|| (a, point.dist(va)))
            })
            .collect();
        PointProfile {
            point,
            vertex,
            visible_reflex,
        }
    }

    fn direct(&self, a: &PointProfile, b: &PointProfile) -> Option<f64> {
        match (a.vertex, b.vertex) {
            (Some(i), Some(j)) => Some(self.vertex_distance(i, j)),
            (Some(i), None) | (None, Some(i)) => {
                let other = if a.vertex.is_some() { b } else { a };
                let vi = self.poly.vertex(i);
                self.visible(vi, other.point).then(|| vi.dist(other.point))
            }
            (None, None) => self
                .visible(a.point, b.point)
                .then(|| a.point.dist(b.point)),
        }
    }

    /// Geodesic distance between two profiled points.
    pub fn profile_distance(&self, a: &PointProfile, b: &PointProfile) -> f64 {
        self.profile_route(a, b).0
    }

    /// Distance plus the first and last bend vertices of the route, if any.
    fn profile_route(&self, a: &PointProfile, b: &PointProfile) -> (f64, Option<(usize, usize)>) {
        if let Some(d) = self.direct(a, b) {
            return (d, None);
        }
        let mut best = (f64::INFINITY, None);
        // a vertex endpoint uses its own row of the distance table
        let single = |i: usize, other: &PointProfile| -> Vec<(usize, f64)> {
            other
                .visible_reflex
                .iter()
                .map(|&(v, dv)| (v, self.vertex_distance(i, v) + dv))
                .collect()
        };
        match (a.vertex, b.vertex) {
            (Some(i), _) => {
                for (v, d) in single(i, b) {
                    if d < best.0 {
                        best = (d, Some((i, v)));
                    }
                }
                return best;
            }
            (None, Some(j)) => {
                for (u, d) in single(j, a) {
                    if d < best.0 {
                        best = (d, Some((u, j)));
                    }
                }
                return best;
            }
            (None, None) => {}
        }
        for &(u, du) in &a.visible_reflex {
            for &(v, dv) in &b.visible_reflex {
                let d = du + self.vertex_distance(u, v) + dv;
                if d < best.0 {
                    best = (d, Some((u, v)));
                }
            }
        }
        best
    }

    pub fn distance(&self, p: Point2, q: Point2) -> Result<f64> {
        let a = self.profile(p)?;
        let b = self.profile(q)?;
        Ok(self.profile_distance(&a, &b))
    }

    pub fn shortest_path(&self, p: Point2, q: Point2) -> Result<GeodesicPath> {
        let a = self.profile(p)?;
        let b = self.profile(q)?;
        if a.point.dist(b.point) <= self.eps && a.vertex == b.vertex {
            return Ok(GeodesicPath {
                waypoints: vec![p],
                length: 0.0,
            });
        }
        let (length, route) = match (a.vertex, b.vertex) {
            (Some(i), Some(j)) => {
                let vi = self.poly.vertex(i);
                let vj = self.poly.vertex(j);
                let d = self.vertex_distance(i, j);
                if self.graph.weight(i, j).is_some() && (d - vi.dist(vj)).abs() <= self.eps {
                    (d, None)
                } else {
                    (d, Some((i, j)))
                }
            }
            _ => self.profile_route(&a, &b),
        };
        let mut waypoints = vec![a.point];
        if let Some((u, v)) = route {
            for w in self.vertex_chain(u, v) {
                if waypoints.last().is_none_or(|l| l.dist(self.poly.vertex(w)) > self.eps) {
                    waypoints.push(self.poly.vertex(w));
                }
            }
        }
        if waypoints.last().is_none_or(|l| l.dist(b.point) > self.eps) {
            waypoints.push(b.point);
        }
        Ok(GeodesicPath { waypoints, length })
    }

    /// Vertex sequence `u, ..., v` of the shortest vertex path.
    pub fn vertex_chain(&self, u: usize, v: usize) -> Vec<usize> {
        let n = self.poly.n();
        let mut chain = vec![v];
        let mut cur = v;
        while cur != u {
            let p = self.vpred[u * n + cur];
            if p == NONE {
                break;
            }
            cur = p as usize;
            chain.push(cur);
        }
        chain.reverse();
        chain
    }

    pub fn shortest_path_tree(&self, source: Point2) -> Result<ShortestPathTree> {
        let prof = self.profile(source)?;
        Ok(self.tree_from_profile(&prof))
    }

    pub fn tree_from_profile(&self, prof: &PointProfile) -> ShortestPathTree {
        let n = self.poly.n();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![Parent::Unreachable; n];
        if let Some(i) = prof.vertex {
            for v in 0..n {
                dist[v] = self.vertex_distance(i, v);
                let p = self.vpred[i * n + v];
                parent[v] = if v == i {
                    Parent::Source
                } else if p == NONE {
                    Parent::Unreachable
                } else if p as usize == i {
                    Parent::Source
                } else {
                    Parent::Vertex(p as usize)
                };
            }
        } else {
            for v in 0..n {
                let pv = self.poly.vertex(v);
                if self.visible(prof.point, pv) {
                    dist[v] = prof.point.dist(pv);
                    parent[v] = Parent::Source;
                }
            }
            for &(a, da) in &prof.visible_reflex {
                for v in 0..n {
                    let d = da + self.vertex_distance(a, v);
                    if d < dist[v] - self.eps {
                        dist[v] = d;
                        parent[v] = if v == a {
                            Parent::Source
                        } else {
                            Parent::Vertex(self.vpred[a * n + v] as usize)
                        };
                    }
                }
            }
        }
        ShortestPathTree {
            source: prof.point,
            source_vertex: prof.vertex,
            dist,
            parent,
            reflex: self.reflex.clone(),
        }
    }

    /// Argmax pair of geodesic distance over `points`, ties broken by the
    /// lexicographically smallest ordered pair.
    pub fn diametral_pair(&self, points: &[Point2]) -> Result<(Point2, Point2, f64)> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let profiles: Vec<PointProfile> = points
            .iter()
            .map(|&p| self.profile(p))
            .collect::<Result<_>>()?;
        let m = points.len();
        let row_best: Vec<(f64, Point2, Point2)> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut best = (0.0, profiles[i].point, profiles[i].point);
                for j in (i + 1)..m {
                    let d = self.profile_distance(&profiles[i], &profiles[j]);
                    let (u, v) = ordered(profiles[i].point, profiles[j].point);
                    if better_pair(d, u, v, best) {
                        best = (d, u, v);
                    }
                }
                best
            })
            .collect();
        let mut best = (f64::NEG_INFINITY, points[0], points[0]);
        for cand in row_best {
            if best.0 == f64::NEG_INFINITY || better_pair(cand.0, cand.1, cand.2, best) {
                best = cand;
            }
        }
        Ok((best.1, best.2, best.0))
    }
}

fn ordered(a: Point2, b: Point2) -> (Point2, Point2) {
    if a.lex_cmp(&b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

fn better_pair(d: f64, u: Point2, v: Point2, best: (f64, Point2, Point2)) -> bool {
    let tol = 1e-9 * d.abs().max(best.0.abs()).max(1.0);
    if d > best.0 + tol {
        return true;
    }
    if d < best.0 - tol {
        return false;
    }
    u.lex_cmp(&best.1).then(v.lex_cmp(&best.2)) == Ordering::Less
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

/// Single-source distances where only the source and reflex vertices relay.
fn dijkstra(graph: &VisibilityGraph, is_reflex: &[bool], s: usize) -> (Vec<f64>, Vec<u32>) {
    let n = is_reflex.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![NONE; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem(0.0, s));
    while let Some(HeapItem(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u != s && !is_reflex[u] {
            continue;
        }
        for &(v, w) in &graph.adjacency[u] {
            if v >= n {
                continue;
            }
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = u as u32;
                heap.push(HeapItem(nd, v));
            }
        }
    }
    (dist, pred)
}

/// Distances from one source to every polygon vertex.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub source: Point2,
    pub source_vertex: Option<usize>,
    pub dist: Vec<f64>,
    pub parent: Vec<Parent>,
    reflex: Vec<usize>,
}

impl ShortestPathTree {
    /// Distance from the source to an arbitrary profiled point.
    pub fn distance_to(&self, engine: &GeodesicEngine, q: &PointProfile) -> f64 {
        if let Some(v) = q.vertex {
            return self.dist[v];
        }
        if engine.visible(self.source, q.point) {
            return self.source.dist(q.point);
        }
        q.visible_reflex
            .iter()
            .map(|&(a, da)| self.dist[a] + da)
            .fold(f64::INFINITY, f64::min)
    }

    /// Like [`distance_to`](Self::distance_to) but also returns the last
    /// bend vertex (`None` when the source sees `q`).
    pub fn anchor_of(&self, engine: &GeodesicEngine, q: &PointProfile) -> (f64, Option<usize>) {
        if engine.visible(self.source, q.point) {
            return (self.source.dist(q.point), None);
        }
        let mut best = (f64::INFINITY, None);
        for &(a, da) in &q.visible_reflex {
            let d = self.dist[a] + da;
            if d < best.0 {
                best = (d, Some(a));
            }
        }
        best
    }

    pub fn reflex(&self) -> &[usize] {
        &self.reflex
    }

    /// Vertex chain from the source down to `v` (excluding the source point).
    pub fn chain_to(&self, v: usize) -> Vec<usize> {
        let mut chain = vec![v];
        let mut cur = v;
        while let Parent::Vertex(p) = self.parent[cur] {
            if chain.len() > self.parent.len() {
                break;
            }
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_engine() -> GeodesicEngine {
        GeodesicEngine::new(
            Polygon::from_coords(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]).unwrap(),
        )
    }

    fn square() -> GeodesicEngine {
        GeodesicEngine::new(Polygon::from_coords(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]).unwrap())
    }

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn convex_distance_is_euclidean() {
        let e = square();
        assert!((e.distance(pt(0., 0.), pt(1., 1.)).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(e.distance(pt(0.3, 0.3), pt(0.3, 0.3)).unwrap(), 0.0);
    }

    #[test]
    fn l_polygon_bends_at_reflex_corner() {
        let e = l_engine();
        let d = e.distance(pt(2., 0.5), pt(0.5, 2.)).unwrap();
        assert!((d - 2.0 * 1.25f64.sqrt()).abs() < 1e-12);
        let path = e.shortest_path(pt(2., 0.5), pt(0.5, 2.)).unwrap();
        assert_eq!(path.waypoints, vec![pt(2., 0.5), pt(1., 1.), pt(0.5, 2.)]);
        assert!((path.length - path.polyline_length()).abs() < 1e-12);
    }

    #[test]
    fn outside_point_rejected() {
        let e = l_engine();
        assert!(matches!(
            e.distance(pt(1.5, 1.5), pt(0., 0.)),
            Err(Error::PointOutsidePolygon { .. })
        ));
    }

    #[test]
    fn tree_in_l_polygon() {
        let e = l_engine();
        let t = e.shortest_path_tree(pt(2., 0.5)).unwrap();
        assert_eq!(t.parent[5], Parent::Vertex(3));
        assert_eq!(t.parent[3], Parent::Source);
        assert!((t.dist[5] - (1.25f64.sqrt() + 2f64.sqrt())).abs() < 1e-12);
        let tv = e.shortest_path_tree(pt(2., 0.)).unwrap();
        assert_eq!(tv.dist[1], 0.0);
    }

    #[test]
    fn diametral_pair_of_l_vertices() {
        let e = l_engine();
        let (u, v, d) = e.diametral_pair(e.polygon().vertices()).unwrap();
        assert_eq!((u, v), (pt(0., 2.), pt(2., 0.)));
        assert!((d - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let single = e.diametral_pair(&[pt(0.5, 0.5)]).unwrap();
        assert_eq!(single.2, 0.0);
        assert!(matches!(e.diametral_pair(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn fault_injection_changes_vertex_metric() {
        let e = l_engine();
        let f = e.with_edge_weight_factor(1, 3, 1.1).unwrap();
        assert!((f.vertex_distance(1, 3) - 1.1 * 2f64.sqrt()).abs() < 1e-12);
        assert!(e.with_edge_weight_factor(2, 4, 1.1).is_err());
    }

    proptest::proptest! {
        #[test]
        fn rectangle_distance_is_euclidean(ax in 0.0f64..3.0, ay in 0.0f64..2.0, bx in 0.0f64..3.0, by in 0.0f64..2.0) {
            let e = GeodesicEngine::new(Polygon::from_coords(&[(0., 0.), (3., 0.), (3., 2.), (0., 2.)]).unwrap());
            let (a, b) = (Point2::new(ax, ay), Point2::new(bx, by));
            let d = e.distance(a, b).unwrap();
            proptest::prop_assert!((d - a.dist(b)).abs() <= 1e-12 * d.max(1.0));
        }

        #[test]
        fn around_the_corner(ax in 0.05f64..0.95, ay in 1.05f64..1.95, bx in 1.05f64..1.95, by in 0.05f64..0.95) {
            let e = l_engine();
            let (a, b) = (Point2::new(ax, ay), Point2::new(bx, by));
            let corner = Point2::new(1.0, 1.0);
            let via = a.dist(corner) + corner.dist(b);
            let d = e.distance(a, b).unwrap();
            if e.visible(a, b) {
                proptest::prop_assert!((d - a.dist(b)).abs() < 1e-12);
            } else {
                proptest::prop_assert!((d - via).abs() < 1e-12);
            }
        }
    }
}
