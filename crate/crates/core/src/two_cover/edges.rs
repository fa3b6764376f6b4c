//! Coverage of polygon edges by geodesic disks.
//!
//! Geodesic distance from a fixed point is convex along any segment of a
//! simple polygon, so the part of an edge covered by one disk is an interval
//! and an edge whose endpoints lie in the same disk is covered entirely.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::disk::{Arc, GeodesicDisk};
use crate::error::{Error, Result};
use crate::geometry::{GeodesicEngine, Point2, ShortestPathTree};

pub(crate) fn cover_tol(r: f64) -> f64 {
    1e-9 * r.max(1.0)
}

/// A center with its precomputed shortest path tree.
pub(crate) struct Probe {
    pub tree: ShortestPathTree,
}

impl Probe {
    pub fn new(engine: &GeodesicEngine, c: Point2) -> Self {
        Self {
            tree: engine.tree_from_profile(&engine.profile_unchecked(c)),
        }
    }

    pub fn dist(&self, engine: &GeodesicEngine, q: Point2) -> f64 {
        self.tree.distance_to(engine, &engine.profile_unchecked(q))
    }

    pub fn vertex_dist(&self, v: usize) -> f64 {
        self.tree.dist[v]
    }
}

/// Largest `t ∈ [0, 1]` such that `a + s(b − a)` is within `r` of the probe
/// for all `s ≤ t`; negative when `a` itself is not covered.
pub(crate) fn reach(engine: &GeodesicEngine, probe: &Probe, r: f64, a: Point2, b: Point2) -> f64 {
    let lim = r + cover_tol(r);
    if probe.dist(engine, a) > lim {
        return -1.0;
    }
    if probe.dist(engine, b) <= lim {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..42 {
        let mid = 0.5 * (lo + hi);
        if probe.dist(engine, a.lerp(b, mid)) <= lim {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// An edge not covered by the union of two disks. Its `from` endpoint is
/// covered only by disk `first` (0 or 1) and its `to` endpoint only by the
/// other one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncoveredEdge {
    pub edge: usize,
    pub first: usize,
    /// Coverage reach from `from` and from `to`, as edge fractions.
    pub reach_from: f64,
    pub reach_to: f64,
}

pub(crate) fn uncovered_edges_with(
    engine: &GeodesicEngine,
    probes: [&Probe; 2],
    r: f64,
) -> Result<Vec<UncoveredEdge>> {
    let poly = engine.polygon();
    let lim = r + cover_tol(r);
    let inside = |k: usize, v: usize| probes[k].vertex_dist(v) <= lim;
    if (0..poly.n()).any(|v| !inside(0, v) && !inside(1, v)) {
        return Err(Error::VerticesNotCovered);
    }
    let mut out = Vec::new();
    for e in poly.edges() {
        if (inside(0, e.from) && inside(0, e.to)) || (inside(1, e.from) && inside(1, e.to)) {
            continue;
        }
        let first = if inside(0, e.from) { 0 } else { 1 };
        let reach_from = reach(engine, probes[first], r, e.a, e.b);
        let reach_to = reach(engine, probes[1 - first], r, e.b, e.a);
        if reach_from + reach_to >= 1.0 {
            continue;
        }
        out.push(UncoveredEdge {
            edge: e.index,
            first,
            reach_from,
            reach_to,
        });
    }
    if out.len() > 2 {
        return Err(Error::InvariantViolation(format!(
            "{} uncovered edges with all vertices covered",
            out.len()
        )));
    }
    Ok(out)
}

/// Edges of `∂P` not inside `D1 ∪ D2`; at most two when every vertex is covered.
pub fn uncovered_edges(engine: &GeodesicEngine, d1: &GeodesicDisk, d2: &GeodesicDisk) -> Result<Vec<UncoveredEdge>> {
    if (d1.radius - d2.radius).abs() > cover_tol(d1.radius) {
        return Err(Error::InvalidParameter {
            name: "radius",
            reason: "both disks must have the same radius".into(),
        });
    }
    engine.check_inside(d1.center)?;
    engine.check_inside(d2.center)?;
    let p1 = Probe::new(engine, d1.center);
    let p2 = Probe::new(engine, d2.center);
    uncovered_edges_with(engine, [&p1, &p2], d1.radius)
}

/// Objective over arc parameters: the smallest coverage slack over the edges.
struct EdgeSearch<'a> {
    engine: &'a GeodesicEngine,
    arcs: [&'a Arc; 2],
    /// `(edge endpoints oriented from the side of arc 0, ...)`
    edges: Vec<(Point2, Point2)>,
    r: f64,
    cache: [HashMap<u64, Vec<f64>>; 2],
}

impl EdgeSearch<'_> {
    /// Reach of each edge from the side of arc `k` for its center at `t`.
    fn reaches(&mut self, k: usize, t: f64) -> Vec<f64> {
        let key = t.to_bits();
        if let Some(v) = self.cache[k].get(&key) {
            return v.clone();
        }
        let probe = Probe::new(self.engine, self.arcs[k].point_at(t));
        let v: Vec<f64> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (from, to) = if k == 0 { (a, b) } else { (b, a) };
                reach(self.engine, &probe, self.r, from, to)
            })
            .collect();
        self.cache[k].insert(key, v.clone());
        v
    }

    fn slack(&mut self, s: f64, t: f64) -> f64 {
        let ra = self.reaches(0, s);
        let rb = self.reaches(1, t);
        ra.iter().zip(&rb).map(|(x, y)| x + y - 1.0).fold(f64::INFINITY, f64::min)
    }
}

const GRID: usize = 17;

/// Positions on arcs `a` and `b` whose radius-`r` disks cover the given
/// edges, each oriented so that its `from` endpoint lies in the disks
/// centered on `a`.
pub(crate) fn cover_oriented_edges(
    engine: &GeodesicEngine,
    a: &Arc,
    b: &Arc,
    edges: &[(Point2, Point2)],
    r: f64,
) -> Option<(Point2, Point2)> {
    if edges.is_empty() {
        return Some((a.midpoint(), b.midpoint()));
    }
    let mut search = EdgeSearch {
        engine,
        arcs: [a, b],
        edges: edges.to_vec(),
        r,
        cache: [HashMap::new(), HashMap::new()],
    };
    let params: Vec<f64> = (0..GRID).map(|i| i as f64 / (GRID - 1) as f64).collect();
    let mut scored = Vec::with_capacity(GRID * GRID);
    for &s in &params {
        for &t in &params {
            let v = search.slack(s, t);
            if v >= 0.0 {
                return Some((a.point_at(s), b.point_at(t)));
            }
            scored.push((v, s, t));
        }
    }
    scored.sort_by(|x, y| y.0.total_cmp(&x.0));
    for &(v0, s0, t0) in scored.iter().take(3) {
        let (mut best, mut s, mut t) = (v0, s0, t0);
        let mut step = 1.0 / (GRID - 1) as f64;
        while step > 1e-10 {
            let mut moved = false;
            for (ds, dt) in [(1., 0.), (-1., 0.), (0., 1.), (0., -1.), (1., 1.), (1., -1.), (-1., 1.), (-1., -1.)] {
                let (ns, nt) = ((s + ds * step).clamp(0.0, 1.0), (t + dt * step).clamp(0.0, 1.0));
                let v = search.slack(ns, nt);
                if v > best {
                    (best, s, t) = (v, ns, nt);
                    moved = true;
                    if best >= 0.0 {
                        return Some((a.point_at(s), b.point_at(t)));
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
    }
    None
}

/// Positions `a′ ∈ A`, `b′ ∈ B` whose radius-`r` disks cover the listed edges.
///
/// Which endpoint of each edge belongs to which disk is read off the arc
/// midpoints, since the covered vertex set does not change along an arc.
pub fn cover_uncovered_edges(
    engine: &GeodesicEngine,
    a: &Arc,
    b: &Arc,
    edges: &[usize],
    r: f64,
) -> Result<Option<(Point2, Point2)>> {
    if edges.len() > 2 {
        return Err(Error::TooManyEdges(edges.len()));
    }
    let poly = engine.polygon();
    let pa = Probe::new(engine, a.midpoint());
    let lim = r + cover_tol(r);
    let oriented: Vec<(Point2, Point2)> = edges
        .iter()
        .map(|&i| {
            let e = poly.edge(i);
            if pa.vertex_dist(e.from) <= lim {
                (e.a, e.b)
            } else {
                (e.b, e.a)
            }
        })
        .collect();
    Ok(cover_oriented_edges(engine, a, b, &oriented, r))
}
