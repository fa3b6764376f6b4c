//! Covering a simple polygon with two geodesic disks of a given radius, and
//! the smallest such radius.
//!
//! If two radius-`r` disks cover `P`, they can be moved so that both centers
//! lie on radius-`r` circles around convex vertices. Those circles are cut
//! into arcs along which the set of covered vertices does not change; for
//! every pair of arcs, disks at the arc midpoints are tested against the
//! vertices, and the at most two edges left uncovered are repaired by moving
//! the centers along their arcs. Boundary coverage implies full coverage.

mod edges;
mod verify;

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{k_cover, KCover};
use crate::disk::{disk_boundary_from_tree, pieces_intersections, residual_tol, Arc, DiskBoundary, Piece};
use crate::error::{Error, Result};
use crate::geometry::{GeodesicEngine, Point2};
use edges::{cover_oriented_edges, cover_tol, uncovered_edges_with, Probe};

pub use edges::{cover_uncovered_edges, uncovered_edges, UncoveredEdge};
pub use verify::{verify_two_cover, verify_two_cover_detail, TwoCoverCheck, INTERIOR_SAMPLES};

/// One arc of the circle arrangement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementArc {
    /// Convex vertex the circle is centered on.
    pub vertex: usize,
    pub arc: Arc,
    /// Vertices within distance `r` of any center on the arc.
    pub covered: Vec<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleArrangement {
    pub radius: f64,
    /// `(vertex, circle)` for every convex vertex.
    pub circles: Vec<(usize, DiskBoundary)>,
    pub arcs: Vec<ArrangementArc>,
}

/// Radius-`r` circles around the convex vertices, with arcs cut wherever
/// they meet the circle of any vertex.
///
/// Circles around reflex vertices only serve as cut points: a reflex vertex
/// must be covered as well, so crossing its circle changes the covered set.
pub fn geodesic_circle_arrangement(engine: &GeodesicEngine, r: f64) -> Result<CircleArrangement> {
    check_input(engine, r)?;
    let poly = engine.polygon();
    let n = poly.n();
    let all: Vec<DiskBoundary> = (0..n)
        .into_par_iter()
        .map(|v| {
            let tree = engine.tree_from_profile(&engine.profile_unchecked(poly.vertex(v)));
            disk_boundary_from_tree(engine, &tree, r)
        })
        .collect();
    let arc_pieces: Vec<Vec<Piece>> = all
        .iter()
        .map(|b| b.arcs.iter().map(|a| Piece::Arc(*a)).collect())
        .collect();
    let tol = residual_tol(r);
    let convex = poly.convex_vertices();

    let arcs: Vec<ArrangementArc> = convex
        .par_iter()
        .flat_map_iter(|&v| {
            let mut cuts = Vec::new();
            for (w, other) in arc_pieces.iter().enumerate() {
                if w != v {
                    cuts.extend(pieces_intersections(&arc_pieces[v], other, tol).into_iter().map(|bp| bp.point));
                }
            }
            let lim = r + cover_tol(r);
            arc_pieces[v]
                .iter()
                .flat_map(|p| p.split_at(&cuts, tol))
                .filter_map(|p| match p {
                    Piece::Arc(arc) => Some(arc),
                    Piece::Segment(_) => None,
                })
                .map(|arc| {
                    let probe = Probe::new(engine, arc.midpoint());
                    ArrangementArc {
                        vertex: v,
                        arc,
                        covered: (0..n).map(|u| probe.vertex_dist(u) <= lim).collect(),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let circles = convex.iter().map(|&v| (v, all[v].clone())).collect();
    Ok(CircleArrangement { radius: r, circles, arcs })
}

fn check_input(engine: &GeodesicEngine, r: f64) -> Result<()> {
    if engine.polygon().has_holes() {
        return Err(Error::PolygonHasHoles);
    }
    if !(r > engine.eps()) || !r.is_finite() {
        return Err(Error::NonPositiveRadius(r));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverWitness {
    pub c1: Point2,
    pub c2: Point2,
    pub r: f64,
    pub covered_check: TwoCoverCheck,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverStats {
    pub arcs: usize,
    pub pairs_examined: usize,
    /// Arc pairs whose midpoint disks cover every vertex.
    pub vertex_covering_pairs: usize,
    /// Largest number of uncovered edges seen with all vertices covered.
    pub max_uncovered_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverSearch {
    pub witness: Option<TwoCoverWitness>,
    pub stats: TwoCoverStats,
}

/// A single disk covers `P` iff it contains every vertex.
fn single_disk(engine: &GeodesicEngine, arr: &CircleArrangement, r: f64) -> Option<Point2> {
    let poly = engine.polygon();
    let lim = r + cover_tol(r);
    let mut centers: Vec<Point2> = poly.vertices().to_vec();
    if let Ok((u, v, _)) = engine.diametral_pair(poly.vertices()) {
        if let Ok(path) = engine.shortest_path(u, v) {
            centers.push(point_along(&path.waypoints, 0.5 * path.length));
        }
    }
    centers.extend(arr.arcs.iter().map(|a| a.arc.midpoint()));
    centers.into_iter().find(|&c| {
        let probe = Probe::new(engine, c);
        (0..poly.n()).all(|v| probe.vertex_dist(v) <= lim)
    })
}

fn point_along(waypoints: &[Point2], s: f64) -> Point2 {
    let mut left = s;
    for w in waypoints.windows(2) {
        let len = w[0].dist(w[1]);
        if left <= len && len > 0.0 {
            return w[0].lerp(w[1], left / len);
        }
        left -= len;
    }
    *waypoints.last().expect("path has endpoints")
}

fn witness(engine: &GeodesicEngine, c1: Point2, c2: Point2, r: f64) -> Result<TwoCoverWitness> {
    Ok(TwoCoverWitness {
        c1,
        c2,
        r,
        covered_check: verify_two_cover_detail(engine, c1, c2, r)?,
    })
}

/// Decision procedure with search statistics.
pub fn search_two_disk_cover(engine: &GeodesicEngine, r: f64) -> Result<TwoCoverSearch> {
    let arr = geodesic_circle_arrangement(engine, r)?;
    let mut stats = TwoCoverStats {
        arcs: arr.arcs.len(),
        ..Default::default()
    };
    if let Some(c) = single_disk(engine, &arr, r) {
        return Ok(TwoCoverSearch {
            witness: Some(witness(engine, c, c, r)?),
            stats,
        });
    }

    let m = arr.arcs.len();
    let probes: Vec<Probe> = arr.arcs.par_iter().map(|a| Probe::new(engine, a.arc.midpoint())).collect();
    let examined = AtomicUsize::new(0);
    let vertex_pairs = AtomicUsize::new(0);
    let max_uncovered = AtomicUsize::new(0);

    let found: Option<Result<(Point2, Point2)>> = (0..m).into_par_iter().find_map_first(|i| {
        for j in i..m {
            examined.fetch_add(1, Ordering::Relaxed);
            let (a, b) = (&arr.arcs[i], &arr.arcs[j]);
            if !a.covered.iter().zip(&b.covered).all(|(x, y)| *x || *y) {
                continue;
            }
            vertex_pairs.fetch_add(1, Ordering::Relaxed);
            let open = match uncovered_edges_with(engine, [&probes[i], &probes[j]], r) {
                Ok(e) => e,
                Err(e) => return Some(Err(e)),
            };
            max_uncovered.fetch_max(open.len(), Ordering::Relaxed);
            let poly = engine.polygon();
            let oriented: Vec<(Point2, Point2)> = open
                .iter()
                .map(|u| {
                    let e = poly.edge(u.edge);
                    if u.first == 0 {
                        (e.a, e.b)
                    } else {
                        (e.b, e.a)
                    }
                })
                .collect();
            if let Some((c1, c2)) = cover_oriented_edges(engine, &a.arc, &b.arc, &oriented, r) {
                let pr = [Probe::new(engine, c1), Probe::new(engine, c2)];
                if verify::boundary_gap(engine, &pr, r).is_none() {
                    return Some(Ok((c1, c2)));
                }
            }
        }
        None
    });
    stats.pairs_examined = examined.into_inner();
    stats.vertex_covering_pairs = vertex_pairs.into_inner();
    stats.max_uncovered_edges = max_uncovered.into_inner();
    let witness = match found {
        Some(Ok((c1, c2))) => Some(witness(engine, c1, c2, r)?),
        Some(Err(e)) => return Err(e),
        None => None,
    };
    Ok(TwoCoverSearch { witness, stats })
}

/// Two radius-`r` disks covering `P`, if the search finds them.
pub fn test_two_disk_cover(engine: &GeodesicEngine, r: f64) -> Result<Option<TwoCoverWitness>> {
    Ok(search_two_disk_cover(engine, r)?.witness)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinTwoCover {
    pub witness: TwoCoverWitness,
    /// Largest radius known to fail.
    pub lower: f64,
    pub eps: f64,
    pub iterations: usize,
}

/// Default search tolerance: `1e-6` times the geodesic vertex diameter.
pub fn default_eps(engine: &GeodesicEngine) -> Result<f64> {
    let (_, _, d) = engine.diametral_pair(engine.polygon().vertices())?;
    Ok(1e-6 * d.max(f64::MIN_POSITIVE))
}

/// Smallest radius (to within `eps`) at which two disks cover `P`.
///
/// Bisection between a lower bound from the farthest-point certificate (any
/// two disks covering three points pairwise `δ` apart need radius `δ/2`) and
/// the covering radius of the two farthest-point centers.
pub fn min_two_cover(engine: &GeodesicEngine, eps: f64) -> Result<MinTwoCover> {
    if engine.polygon().has_holes() {
        return Err(Error::PolygonHasHoles);
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter {
            name: "eps",
            reason: format!("must be positive, got {eps}"),
        });
    }
    let KCover { centers, radius, placement } = k_cover(engine, 2)?;
    let mut hi = radius;
    let mut lo = 0.5 * placement.certificate_delta;
    let mut best = match test_two_disk_cover(engine, hi)? {
        Some(w) => w,
        None => {
            let c2 = centers.get(1).copied().unwrap_or(centers[0]);
            witness(engine, centers[0], c2, hi)?
        }
    };
    let mut iterations = 0;
    while hi - lo > eps {
        let mid = 0.5 * (lo + hi);
        iterations += 1;
        match test_two_disk_cover(engine, mid)? {
            Some(w) => {
                hi = mid;
                best = w;
            }
            None => lo = mid,
        }
    }
    Ok(MinTwoCover {
        witness: best,
        lower: lo,
        eps,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn small_circles_are_single_arcs() {
        let e = GeodesicEngine::new(shapes::unit_square());
        let arr = geodesic_circle_arrangement(&e, 0.2).unwrap();
        assert_eq!(arr.circles.len(), 4);
        assert_eq!(arr.arcs.len(), 4);
    }

    #[test]
    fn huge_radius_has_no_arcs() {
        let e = GeodesicEngine::new(shapes::unit_square());
        let arr = geodesic_circle_arrangement(&e, 2.0).unwrap();
        assert!(arr.arcs.is_empty());
        assert!(arr.circles.iter().all(|(_, c)| c.arcs.is_empty()));
    }

    #[test]
    fn rectangle_decisions() {
        let e = GeodesicEngine::new(shapes::rectangle(2.0, 1.0));
        let w = test_two_disk_cover(&e, 0.72).unwrap().expect("cover at 0.72");
        assert!(w.covered_check.passed());
        assert!(test_two_disk_cover(&e, 0.70).unwrap().is_none());
    }

    #[test]
    fn square_single_disk() {
        let e = GeodesicEngine::new(shapes::unit_square());
        let w = test_two_disk_cover(&e, 0.5f64.sqrt()).unwrap().expect("one disk suffices");
        assert!(verify_two_cover(&e, w.c1, w.c2, w.r).unwrap());
    }

    #[test]
    fn uncovered_edge_examples() {
        let e = GeodesicEngine::new(shapes::rectangle(2.0, 1.0));
        let d = |c, r| crate::disk::GeodesicDisk::new(c, r);
        assert_eq!(
            uncovered_edges(&e, &d(pt(0.5, 0.5), 0.6), &d(pt(1.5, 0.5), 0.6)),
            Err(Error::VerticesNotCovered)
        );
        let open = uncovered_edges(&e, &d(pt(0.5, 0.5), 0.75), &d(pt(1.5, 0.5), 0.75)).unwrap();
        assert!(open.len() <= 2);
    }

    #[test]
    fn holes_rejected() {
        let e = GeodesicEngine::new(shapes::square_with_hole());
        assert!(matches!(test_two_disk_cover(&e, 1.0), Err(Error::PolygonHasHoles)));
    }
}
