//! Grid-graph shortest paths, used as a reference for geodesic distances.
//!
//! Deliberately shares no geometry code with the main engine: membership and
//! segment tests are reimplemented here in their simplest form.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::geometry::{Point2, Polygon};

const TOL: f64 = 1e-9;

/// Polygon rings copied into plain arrays.
#[derive(Debug, Clone)]
pub struct RingSet {
    rings: Vec<Vec<Point2>>,
}

impl RingSet {
    pub fn new(poly: &Polygon) -> Self {
        Self {
            rings: (0..poly.ring_count()).map(|r| poly.ring(r).to_vec()).collect(),
        }
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.rings
            .iter()
            .flat_map(|r| (0..r.len()).map(move |i| (r[i], r[(i + 1) % r.len()])))
    }

    fn near_boundary(&self, q: Point2) -> bool {
        self.edges().any(|(a, b)| dist_to_segment(q, a, b) <= TOL)
    }

    /// Closed membership by winding number.
    pub fn contains(&self, q: Point2) -> bool {
        if self.near_boundary(q) {
            return true;
        }
        let mut winding = 0i32;
        for (a, b) in self.edges() {
            let side = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
            if a.y <= q.y {
                if b.y > q.y && side > 0.0 {
                    winding += 1;
                }
            } else if b.y <= q.y && side < 0.0 {
                winding -= 1;
            }
        }
        winding != 0
    }

    /// Whether segment `pq` stays in the closed polygon.
    pub fn segment_inside(&self, p: Point2, q: Point2) -> bool {
        let mut cuts = vec![0.0, 1.0];
        let d = q - p;
        let len2 = d.norm_sq();
        for (a, b) in self.edges() {
            if crosses(p, q, a, b) {
                return false;
            }
            if len2 > 0.0 && dist_to_segment(a, p, q) <= TOL {
                cuts.push(((a - p).dot(d) / len2).clamp(0.0, 1.0));
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.windows(2)
            .all(|w| w[1] - w[0] <= 1e-12 || self.contains(p.lerp(q, 0.5 * (w[0] + w[1]))))
    }
}

fn dist_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sq();
    let t = if l2 == 0.0 { 0.0 } else { ((p - a).dot(ab) / l2).clamp(0.0, 1.0) };
    p.dist(a + ab * t)
}

fn crosses(p: Point2, q: Point2, a: Point2, b: Point2) -> bool {
    let side = |o: Point2, e: Point2, x: Point2| {
        let n = (e - o).norm();
        ((e.x - o.x) * (x.y - o.y) - (e.y - o.y) * (x.x - o.x)) / n
    };
    let (d1, d2) = (side(a, b, p), side(a, b, q));
    let (d3, d4) = (side(p, q, a), side(p, q, b));
    d1 * d2 < 0.0 && d1.abs() > TOL && d2.abs() > TOL && d3 * d4 < 0.0 && d3.abs() > TOL && d4.abs() > TOL
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lattice graph over the polygon with links to all primitive offsets up to
/// `reach` in each coordinate (`reach = 1` is the 8-neighborhood).
#[derive(Debug, Clone)]
pub struct GridGraph {
    pub step: f64,
    pub reach: i64,
    origin: Point2,
    nx: i64,
    ny: i64,
    /// Node id per lattice cell, `usize::MAX` when outside.
    index: Vec<usize>,
    pub nodes: Vec<Point2>,
    adjacency: Vec<Vec<(u32, f64)>>,
    rings: RingSet,
}

/// Default neighborhood reach: all 32 primitive offsets with coordinates up to 3.
pub const DEFAULT_REACH: i64 = 3;

impl GridGraph {
    pub fn new(poly: &Polygon, step: f64) -> Result<Self> {
        Self::with_reach(poly, step, DEFAULT_REACH)
    }

    pub fn with_reach(poly: &Polygon, step: f64, reach: i64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidParameter {
                name: "step",
                reason: format!("grid step must be positive, got {step}"),
            });
        }
        let rings = RingSet::new(poly);
        let (lo, hi) = poly.bbox();
        let nx = ((hi.x - lo.x) / step).floor() as i64 + 1;
        let ny = ((hi.y - lo.y) / step).floor() as i64 + 1;
        let mut index = vec![usize::MAX; (nx * ny) as usize];
        let mut nodes = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                let p = Point2::new(lo.x + i as f64 * step, lo.y + j as f64 * step);
                if rings.contains(p) {
                    index[(j * nx + i) as usize] = nodes.len();
                    nodes.push(p);
                }
            }
        }
        let mut offsets = Vec::new();
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if (dx, dy) != (0, 0) && gcd(dx.abs(), dy.abs()) == 1 {
                    offsets.push((dx, dy));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for j in 0..ny {
            for i in 0..nx {
                let u = index[(j * nx + i) as usize];
                if u == usize::MAX {
                    continue;
                }
                for &(dx, dy) in &offsets {
                    let (ii, jj) = (i + dx, j + dy);
                    if ii < 0 || jj < 0 || ii >= nx || jj >= ny {
                        continue;
                    }
                    let v = index[(jj * nx + ii) as usize];
                    // each undirected link once
                    if v == usize::MAX || v < u {
                        continue;
                    }
                    if rings.segment_inside(nodes[u], nodes[v]) {
                        let w = nodes[u].dist(nodes[v]);
                        adjacency[u].push((v as u32, w));
                        adjacency[v].push((u as u32, w));
                    }
                }
            }
        }
        Ok(Self {
            step,
            reach,
            origin: lo,
            nx,
            ny,
            index,
            nodes,
            adjacency,
            rings,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn rings(&self) -> &RingSet {
        &self.rings
    }

    /// Grid nodes near `p` that see it, with their Euclidean distances.
    fn attach(&self, p: Point2) -> Vec<(usize, f64)> {
        let span = self.reach.max(2);
        let ci = ((p.x - self.origin.x) / self.step).round() as i64;
        let cj = ((p.y - self.origin.y) / self.step).round() as i64;
        let mut out = Vec::new();
        for j in (cj - span)..=(cj + span) {
            for i in (ci - span)..=(ci + span) {
                if i < 0 || j < 0 || i >= self.nx || j >= self.ny {
                    continue;
                }
                let v = self.index[(j * self.nx + i) as usize];
                if v != usize::MAX && self.rings.segment_inside(p, self.nodes[v]) {
                    out.push((v, p.dist(self.nodes[v])));
                }
            }
        }
        out
    }

    /// Distances from `p` to every node (infinite when unreachable).
    pub fn distances_from(&self, p: Point2) -> Result<Vec<f64>> {
        let seeds = self.attach(p);
        if seeds.is_empty() {
            return Err(Error::DisconnectedSample { x: p.x, y: p.y });
        }
        let mut dist = vec![f64::INFINITY; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        for (v, d) in seeds {
            if d < dist[v] {
                dist[v] = d;
                heap.push(Item(d, v));
            }
        }
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let v = v as usize;
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Item(nd, v));
                }
            }
        }
        Ok(dist)
    }

    /// Distance from a precomputed field to an arbitrary point.
    pub fn distance_to(&self, field: &[f64], source: Point2, q: Point2) -> Result<f64> {
        let mut best = if self.rings.segment_inside(source, q) && source.dist(q) <= (self.reach.max(2) as f64) * self.step {
            source.dist(q)
        } else {
            f64::INFINITY
        };
        let ends = self.attach(q);
        if ends.is_empty() {
            return Err(Error::DisconnectedSample { x: q.x, y: q.y });
        }
        for (v, d) in ends {
            best = best.min(field[v] + d);
        }
        if best.is_finite() {
            Ok(best)
        } else {
            Err(Error::DisconnectedSample { x: q.x, y: q.y })
        }
    }
}

#[derive(PartialEq)]
struct Item(f64, usize);
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

/// Grid-graph distance between two points of the polygon.
pub fn grid_distance(poly: &Polygon, step: f64, p: Point2, q: Point2) -> Result<f64> {
    let g = GridGraph::new(poly, step)?;
    for x in [p, q] {
        if !g.rings.contains(x) {
            return Err(Error::PointOutsidePolygon { x: x.x, y: x.y });
        }
    }
    if p == q {
        return Ok(0.0);
    }
    let field = g.distances_from(p)?;
    g.distance_to(&field, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn square_diagonal() {
        let d = grid_distance(&shapes::unit_square(), 0.01, Point2::new(0., 0.), Point2::new(1., 1.)).unwrap();
        assert!((d / 2f64.sqrt() - 1.0).abs() < 0.02);
    }

    #[test]
    fn l_polygon_pair() {
        let d = grid_distance(&shapes::l_polygon(), 0.01, Point2::new(2., 0.5), Point2::new(0.5, 2.)).unwrap();
        let want = 2.0 * 1.25f64.sqrt();
        assert!(d >= want - 1e-9);
        assert!((d / want - 1.0).abs() < 0.02, "{d}");
    }

    #[test]
    fn same_point() {
        let p = Point2::new(0.3, 0.4);
        assert_eq!(grid_distance(&shapes::unit_square(), 0.1, p, p).unwrap(), 0.0);
    }

    #[test]
    fn neighborhood_sizes() {
        let g1 = GridGraph::with_reach(&shapes::rectangle(10.0, 10.0), 1.0, 1).unwrap();
        let g3 = GridGraph::new(&shapes::rectangle(10.0, 10.0), 1.0).unwrap();
        let center = g1.nodes.iter().position(|p| *p == Point2::new(5., 5.)).unwrap();
        assert_eq!(g1.adjacency[center].len(), 8);
        assert_eq!(g3.adjacency[center].len(), 32);
    }
}
