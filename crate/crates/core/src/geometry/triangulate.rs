//! Ear-clipping triangulation. Holes are first bridged into the outer ring
//! with zero-width slits so a single ring remains.

use std::collections::HashMap;

use rand::Rng;

use super::point::{orient, segments_cross_properly, Point2};
use super::polygon::Polygon;
use super::visibility::segment_visible;

#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    /// Vertex indices into the polygon's flat vertex array, counterclockwise.
    pub triangles: Vec<[usize; 3]>,
    /// `adjacency[t][k]` is the triangle across edge `(t[k], t[k+1])`.
    pub adjacency: Vec<[Option<usize>; 3]>,
    points: Vec<Point2>,
    cumulative_area: Vec<f64>,
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, t: usize) -> [Point2; 3] {
        let [a, b, c] = self.triangles[t];
        [self.points[a], self.points[b], self.points[c]]
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        0.5 * orient(a, b, c)
    }

    pub fn total_area(&self) -> f64 {
        self.cumulative_area.last().copied().unwrap_or(0.0)
    }

    /// Index of a triangle containing `q` (closed, with tolerance `eps`).
    pub fn locate(&self, q: Point2, eps: f64) -> Option<usize> {
        (0..self.len()).find(|&t| {
            let [a, b, c] = self.corners(t);
            let scale = [a.dist(b), b.dist(c), c.dist(a)];
            orient(a, b, q) >= -eps * scale[0]
                && orient(b, c, q) >= -eps * scale[1]
                && orient(c, a, q) >= -eps * scale[2]
        })
    }

    /// Uniform sample from the polygon interior.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2 {
        let total = self.total_area();
        let target = rng.gen::<f64>() * total;
        let t = self
            .cumulative_area
            .partition_point(|&c| c < target)
            .min(self.len() - 1);
        let [a, b, c] = self.corners(t);
        let (mut u, mut v) = (rng.gen::<f64>(), rng.gen::<f64>());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        a + (b - a) * u + (c - a) * v
    }
}

/// Triangulates a validated polygon. Produces `n - 2 + 2h` triangles.
pub fn triangulate(poly: &Polygon) -> Triangulation {
    let pts = poly.vertices().to_vec();
    let ring = bridged_ring(poly);
    let triangles = ear_clip(&pts, ring);

    let mut edge_owner: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (u, v) = (tri[k], tri[(k + 1) % 3]);
            edge_owner.entry((u.min(v), u.max(v))).or_default().push((t, k));
        }
    }
    let mut adjacency = vec![[None; 3]; triangles.len()];
    for owners in edge_owner.values() {
        if let [(t1, k1), (t2, k2)] = owners[..] {
            adjacency[t1][k1] = Some(t2);
            adjacency[t2][k2] = Some(t1);
        }
    }
    let mut cumulative_area = Vec::with_capacity(triangles.len());
    let mut acc = 0.0;
    for tri in &triangles {
        acc += 0.5 * orient(pts[tri[0]], pts[tri[1]], pts[tri[2]]).max(0.0);
        cumulative_area.push(acc);
    }
    Triangulation {
        triangles,
        adjacency,
        points: pts,
        cumulative_area,
    }
}

/// Outer ring with every hole spliced in through a visible bridge.
fn bridged_ring(poly: &Polygon) -> Vec<usize> {
    let pts = poly.vertices();
    let mut ring: Vec<usize> = poly.ring_range(0).collect();
    let mut bridges: Vec<(usize, usize)> = Vec::new();

    let mut holes: Vec<usize> = (1..poly.ring_count()).collect();
    // rightmost holes first keeps bridges short and non-crossing in the common case
    let max_x = |h: usize| {
        poly.ring(h)
            .iter()
            .map(|p| p.x)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    holes.sort_by(|&a, &b| max_x(b).total_cmp(&max_x(a)));

    for h in holes {
        let range = poly.ring_range(h);
        let m = range
            .clone()
            .max_by(|&a, &b| pts[a].lex_cmp(&pts[b]))
            .expect("hole has vertices");
        let mut order: Vec<usize> = (0..ring.len()).collect();
        order.sort_by(|&a, &b| {
            pts[m]
                .dist(pts[ring[a]])
                .total_cmp(&pts[m].dist(pts[ring[b]]))
        });
        let pos = order
            .into_iter()
            .find(|&pos| {
                let v = ring[pos];
                segment_visible(poly, pts[m], pts[v], 1e-12)
                    && !bridges.iter().any(|&(x, y)| {
                        segments_cross_properly(pts[m], pts[v], pts[x], pts[y], 1e-12)
                    })
            })
            .expect("a hole always sees some vertex of the current ring");
        let v = ring[pos];
        bridges.push((m, v));
        // walk the hole starting at m, then return to m and v
        let len = range.len();
        let start = m - range.start;
        let mut splice = Vec::with_capacity(len + 2);
        for k in 0..=len {
            splice.push(range.start + (start + k) % len);
        }
        splice.push(v);
        ring.splice(pos + 1..pos + 1, splice);
    }
    ring
}

fn ear_clip(pts: &[Point2], mut ring: Vec<usize>) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(ring.len().saturating_sub(2));
    let mut guard = 0usize;
    let mut i = 0usize;
    while ring.len() > 3 {
        let n = ring.len();
        let (ip, inx) = ((i + n - 1) % n, (i + 1) % n);
        if is_ear(pts, &ring, ip, i, inx) {
            out.push([ring[ip], ring[i], ring[inx]]);
            ring.remove(i);
            guard = 0;
            if i >= ring.len() {
                i = 0;
            }
            continue;
        }
        i = (i + 1) % n;
        guard += 1;
        if guard > n {
            // numerically stuck: clip the most convex corner
            let best = (0..n)
                .max_by(|&a, &b| {
                    let oa = orient(pts[ring[(a + n - 1) % n]], pts[ring[a]], pts[ring[(a + 1) % n]]);
                    let ob = orient(pts[ring[(b + n - 1) % n]], pts[ring[b]], pts[ring[(b + 1) % n]]);
                    oa.total_cmp(&ob)
                })
                .expect("ring is non-empty");
            out.push([ring[(best + n - 1) % n], ring[best], ring[(best + 1) % n]]);
            ring.remove(best);
            guard = 0;
            i = 0;
        }
    }
    out.push([ring[0], ring[1], ring[2]]);
    out
}

fn is_ear(pts: &[Point2], ring: &[usize], ip: usize, i: usize, inx: usize) -> bool {
    let (a, b, c) = (pts[ring[ip]], pts[ring[i]], pts[ring[inx]]);
    let scale = a.dist(b).max(b.dist(c)).max(c.dist(a));
    if orient(a, b, c) <= 1e-12 * scale * scale {
        return false;
    }
    ring.iter().enumerate().all(|(k, &v)| {
        if k == ip || k == i || k == inx {
            return true;
        }
        let p = pts[v];
        if p == a || p == b || p == c {
            return true;
        }
        // reject points inside or on the triangle
        !(orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0)
    })
}
