//! Candidate points for the farthest point from a center set.
//!
//! The distance from a center `c` to `q` is the minimum, over the anchors
//! `a` that see `q`, of `d(c, a) + |q − a|`, where the anchors are `c`
//! itself and the reflex vertices. Each such term is a *site*. A local
//! maximum of `q ↦ min_c d(c, q)` is a polygon vertex, a point of `∂P` where
//! two sites tie, an interior point where three sites tie, or a point where
//! two sites tie on a shadow ray (the extension of an anchor–reflex segment).
//! Ties are solved in closed form without visibility filtering, which only
//! adds points; every point is then evaluated with exact geodesic distances.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::geometry::{GeodesicEngine, Point2, ShortestPathTree};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Site {
    pub anchor: Point2,
    pub offset: f64,
}

impl Site {
    fn value(&self, q: Point2) -> f64 {
        self.offset + q.dist(self.anchor)
    }
}

/// Where a raw candidate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Origin {
    Vertex,
    /// Two sites tie on a polygon edge.
    EdgeTie,
    /// Three sites tie, or two tie on a shadow ray.
    InteriorTie,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RawCandidate {
    pub point: Point2,
    pub origin: Origin,
    /// Common value of the tied sites (NaN for vertices).
    pub tie: f64,
}

pub(crate) fn sites(engine: &GeodesicEngine, trees: &[ShortestPathTree]) -> Vec<Site> {
    let poly = engine.polygon();
    let mut out = Vec::new();
    for t in trees {
        out.push(Site {
            anchor: t.source,
            offset: 0.0,
        });
        for &v in engine.reflex_vertices() {
            if Some(v) == t.source_vertex || !t.dist[v].is_finite() {
                continue;
            }
            out.push(Site {
                anchor: poly.vertex(v),
                offset: t.dist[v],
            });
        }
    }
    out
}

/// Roots `t` of `s.value(p + t·d) = r.value(p + t·d)`.
fn line_ties(s: &Site, r: &Site, p: Point2, d: Point2) -> Vec<f64> {
    let (ai, aj) = (s.anchor, r.anchor);
    let delta = r.offset - s.offset;
    let l0 = (p - ai).norm_sq() - (p - aj).norm_sq() - delta * delta;
    let l1 = 2.0 * d.dot(aj - ai);
    let mut roots = Vec::new();
    if delta.abs() < 1e-14 {
        if l1.abs() > 1e-300 {
            roots.push(-l0 / l1);
        }
        return roots;
    }
    // (l0 + l1 t)² = 4δ² |p + t d − aj|²
    let pj = p - aj;
    let k = 4.0 * delta * delta;
    let qa = l1 * l1 - k * d.norm_sq();
    let qb = 2.0 * l0 * l1 - 2.0 * k * d.dot(pj);
    let qc = l0 * l0 - k * pj.norm_sq();
    solve_quadratic(qa, qb, qc, &mut roots);
    roots
}

fn solve_quadratic(a: f64, b: f64, c: f64, roots: &mut Vec<f64>) {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return;
    }
    if a.abs() <= 1e-13 * scale {
        if b.abs() > 1e-300 {
            roots.push(-c / b);
        }
        return;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -1e-12 * b * b.max(1e-300) {
        return;
    }
    let sq = disc.max(0.0).sqrt();
    // numerically stable pair
    let qq = -0.5 * (b + b.signum() * sq);
    if qq != 0.0 {
        roots.push(qq / a);
        roots.push(c / qq);
    } else {
        roots.push(-b / (2.0 * a));
    }
}

/// Points where three sites take the same value.
fn triple_ties(s: &Site, r: &Site, t: &Site) -> Vec<Point2> {
    let ai = s.anchor;
    // |q − a_m| = u + e_m with u = |q − a_i|
    let row = |m: &Site| {
        let e = s.offset - m.offset;
        let n = (m.anchor - ai) * 2.0;
        let rhs = m.anchor.norm_sq() - ai.norm_sq() - e * e;
        (n, e, rhs)
    };
    let (n1, e1, b1) = row(r);
    let (n2, e2, b2) = row(t);
    let det = n1.cross(n2);
    let scale = n1.norm() * n2.norm();
    if det.abs() <= 1e-12 * scale.max(1e-300) {
        return Vec::new();
    }
    // n_m · q = b_m − 2 u e_m
    let solve = |c1: f64, c2: f64| Point2::new((c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det);
    let q0 = solve(b1, b2);
    let w = solve(-2.0 * e1, -2.0 * e2);
    let g = q0 - ai;
    let mut us = Vec::new();
    solve_quadratic(w.norm_sq() - 1.0, 2.0 * w.dot(g), g.norm_sq(), &mut us);
    us.into_iter()
        .filter(|&u| u >= -1e-9 && u + e1 >= -1e-9 && u + e2 >= -1e-9)
        .map(|u| q0 + w * u)
        .collect()
}

fn tie_residual_ok(sites: &[&Site], q: Point2, scale: f64) -> Option<f64> {
    let vals: Vec<f64> = sites.iter().map(|s| s.value(q)).collect();
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (q.is_finite() && hi - lo <= 1e-7 * scale).then_some(lo)
}

/// Shadow rays: from each reflex vertex `v`, away from each anchor that sees it.
fn shadow_rays(engine: &GeodesicEngine, anchors: &[Point2]) -> Vec<(Point2, Point2)> {
    let poly = engine.polygon();
    let mut rays = Vec::new();
    for &a in anchors {
        for &v in engine.reflex_vertices() {
            let pv = poly.vertex(v);
            if pv.dist(a) <= engine.eps() || !engine.visible(a, pv) {
                continue;
            }
            rays.push((pv, (pv - a).normalized()));
        }
    }
    rays
}

/// Unfiltered candidate pool for the center trees `trees`.
pub(crate) fn raw_candidates(engine: &GeodesicEngine, trees: &[ShortestPathTree]) -> Vec<RawCandidate> {
    let poly = engine.polygon();
    let eps = engine.eps();
    let scale = poly.bbox_diagonal().max(1.0);
    let all_sites = sites(engine, trees);

    let mut anchors: Vec<Point2> = Vec::new();
    for s in &all_sites {
        if !anchors.iter().any(|a| a.dist(s.anchor) <= eps) {
            anchors.push(s.anchor);
        }
    }
    let rays = shadow_rays(engine, &anchors);
    let edges: Vec<(Point2, Point2)> = poly.edges().map(|e| (e.a, e.b)).collect();

    let m = all_sites.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect();

    let pair_points: Vec<RawCandidate> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (s, r) = (&all_sites[i], &all_sites[j]);
            let mut out = Vec::new();
            if s.anchor.dist(r.anchor) <= eps && (s.offset - r.offset).abs() <= eps {
                return out;
            }
            for &(a, b) in &edges {
                let d = b - a;
                for t in line_ties(s, r, a, d) {
                    if (-1e-9..=1.0 + 1e-9).contains(&t) {
                        let q = a + d * t.clamp(0.0, 1.0);
                        if let Some(v) = tie_residual_ok(&[s, r], q, scale) {
                            out.push(RawCandidate {
                                point: q,
                                origin: Origin::EdgeTie,
                                tie: v,
                            });
                        }
                    }
                }
            }
            for &(o, d) in &rays {
                for t in line_ties(s, r, o, d) {
                    if t > eps && t <= 2.0 * scale {
                        let q = o + d * t;
                        if let Some(v) = tie_residual_ok(&[s, r], q, scale) {
                            out.push(RawCandidate {
                                point: q,
                                origin: Origin::InteriorTie,
                                tie: v,
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();

    let triples: Vec<RawCandidate> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in (i + 1)..m {
                for l in (j + 1)..m {
                    let (s, r, t) = (&all_sites[i], &all_sites[j], &all_sites[l]);
                    for q in triple_ties(s, r, t) {
                        if let Some(v) = tie_residual_ok(&[s, r, t], q, scale) {
                            out.push(RawCandidate {
                                point: q,
                                origin: Origin::InteriorTie,
                                tie: v,
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();

    // ray hits on the boundary
    let mut ray_hits = Vec::new();
    for &(o, d) in &rays {
        for &(a, b) in &edges {
            let e = b - a;
            let den = d.cross(e);
            if den.abs() <= 1e-14 {
                continue;
            }
            let t = (a - o).cross(e) / den;
            let u = (a - o).cross(d) / den;
            if t > eps && (0.0..=1.0).contains(&u) {
                ray_hits.push(RawCandidate {
                    point: a + e * u,
                    origin: Origin::EdgeTie,
                    tie: f64::NAN,
                });
            }
        }
    }

    let mut out: Vec<RawCandidate> = poly
        .vertices()
        .iter()
        .map(|&p| RawCandidate {
            point: p,
            origin: Origin::Vertex,
            tie: f64::NAN,
        })
        .collect();
    let mut seen: HashSet<(i64, i64)> = out.iter().map(|c| key(c.point)).collect();
    for c in pair_points.into_iter().chain(triples).chain(ray_hits) {
        if !poly.contains(c.point, eps) {
            continue;
        }
        if seen.insert(key(c.point)) {
            out.push(c);
        }
    }
    out
}

fn key(p: Point2) -> (i64, i64) {
    ((p.x * 1e9).round() as i64, (p.y * 1e9).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site(x: f64, y: f64, o: f64) -> Site {
        Site {
            anchor: Point2::new(x, y),
            offset: o,
        }
    }

    #[test]
    fn equal_offsets_give_perpendicular_bisector() {
        let ts = line_ties(&site(0., 0.5, 0.), &site(1., 0.5, 0.), Point2::new(0., 0.), Point2::new(1., 0.));
        assert_eq!(ts.len(), 1);
        assert!((ts[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn weighted_tie_on_line() {
        let (s, r) = (site(0., 0., 0.), site(4., 0., 1.));
        let ts = line_ties(&s, &r, Point2::new(-1., 0.), Point2::new(1., 0.));
        let good: Vec<f64> = ts
            .into_iter()
            .filter(|&t| {
                let q = Point2::new(-1. + t, 0.);
                (s.value(q) - r.value(q)).abs() < 1e-12
            })
            .collect();
        // |x| = 1 + |x − 4| on the x-axis gives x = 2.5
        assert_eq!(good.len(), 1);
        assert!((good[0] - 3.5).abs() < 1e-12);
    }

    #[test]
    fn triple_tie_is_circumcenter_for_equal_offsets() {
        let qs = triple_ties(&site(0., 0., 0.), &site(2., 0., 0.), &site(0., 2., 0.));
        assert!(qs.iter().any(|q| q.approx_eq(Point2::new(1., 1.), 1e-12)), "{qs:?}");
    }

    #[test]
    fn triple_tie_respects_offsets() {
        let (a, b, c) = (site(0., 0., 0.3), site(3., 0., 0.), site(0., 3., 0.1));
        let qs = triple_ties(&a, &b, &c);
        assert!(!qs.is_empty());
        for q in qs {
            let v = a.value(q);
            assert!((v - b.value(q)).abs() < 1e-9 && (v - c.value(q)).abs() < 1e-9);
        }
    }
}
