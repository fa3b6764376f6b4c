//! Farthest-point (Gonzalez) placement and the k-cover / k-packing built on it.
//!
//! Works on polygons with holes. Center `c₁` is the first outer vertex; each
//! later center is the point of `P` farthest from the centers chosen so far,
//! found by exact evaluation over the candidate points of [`candidates`].

mod candidates;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GeodesicEngine, Point2, ShortestPathTree};
use candidates::{raw_candidates, Origin, RawCandidate};

/// Where the farthest point is searched for.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub enum CandidateMode {
    /// Vertices plus site ties; the maximum found is the true supremum.
    #[default]
    Exact,
    /// Polygon vertices plus lattice points of the given step. The covering
    /// radius may be underestimated by up to the step, so the ratio
    /// guarantee weakens to `2·OPT + h`.
    Grid(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    /// Interior points where at least three sites tie, or two tie on a
    /// shadow ray, and the tie value is the distance to the center set.
    pub voronoi_vertices: Vec<Point2>,
    /// Boundary points where two sites tie at the distance to the center set.
    pub edge_boundary_points: Vec<Point2>,
    pub polygon_vertices: Vec<Point2>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.voronoi_vertices.len() + self.edge_boundary_points.len() + self.polygon_vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point2> {
        self.voronoi_vertices
            .iter()
            .chain(&self.edge_boundary_points)
            .chain(&self.polygon_vertices)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FarthestPoint {
    pub point: Point2,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementResult {
    pub centers: Vec<Point2>,
    /// Entry `i` is the covering radius of the first `i + 1` centers.
    pub radii_trace: Vec<f64>,
    pub covering_radius: f64,
    /// The point that would become the next center.
    pub next_farthest: Point2,
    /// Minimum pairwise distance among the centers and `next_farthest`.
    pub certificate_delta: f64,
    /// Set when the covering radius hit zero before `k` centers were placed.
    pub saturated: bool,
}

impl PlacementResult {
    /// Every pair among the centers and the next farthest point is at
    /// least the covering radius apart.
    pub fn certificate_holds(&self, eps: f64) -> bool {
        self.certificate_delta >= self.covering_radius - eps
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KCover {
    pub centers: Vec<Point2>,
    pub radius: f64,
    pub placement: PlacementResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KPacking {
    pub centers: Vec<Point2>,
    pub radius: f64,
}

fn trees_for(engine: &GeodesicEngine, centers: &[Point2]) -> Result<Vec<ShortestPathTree>> {
    if centers.is_empty() {
        return Err(Error::EmptySet);
    }
    centers.iter().map(|&c| engine.shortest_path_tree(c)).collect()
}

fn min_distance(engine: &GeodesicEngine, trees: &[ShortestPathTree], q: Point2) -> f64 {
    let prof = engine.profile_unchecked(q);
    trees
        .iter()
        .map(|t| t.distance_to(engine, &prof))
        .fold(f64::INFINITY, f64::min)
}

fn evaluate(engine: &GeodesicEngine, trees: &[ShortestPathTree], pool: &[RawCandidate]) -> Vec<f64> {
    pool.par_iter().map(|c| min_distance(engine, trees, c.point)).collect()
}

fn pool_for(engine: &GeodesicEngine, trees: &[ShortestPathTree], mode: CandidateMode) -> Vec<RawCandidate> {
    match mode {
        CandidateMode::Exact => raw_candidates(engine, trees),
        CandidateMode::Grid(h) => engine
            .polygon()
            .vertices()
            .iter()
            .map(|&p| (p, Origin::Vertex))
            .chain(crate::oracle::brute::node_grid(engine, h).into_iter().map(|p| (p, Origin::InteriorTie)))
            .map(|(point, origin)| RawCandidate {
                point,
                origin,
                tie: f64::NAN,
            })
            .collect(),
    }
}

/// Argmax of the values, ties within a relative 1e-9 going to the
/// lexicographically smallest point.
fn argmax(pool: &[RawCandidate], values: &[f64]) -> FarthestPoint {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9 * best.abs().max(1.0);
    let point = pool
        .iter()
        .zip(values)
        .filter(|(_, &v)| v >= best - tol)
        .map(|(c, _)| c.point)
        .min_by(|a, b| a.lex_cmp(b))
        .expect("candidate pool contains the polygon vertices");
    FarthestPoint { point, distance: best }
}

fn farthest_with(engine: &GeodesicEngine, trees: &[ShortestPathTree], mode: CandidateMode) -> FarthestPoint {
    let pool = pool_for(engine, trees, mode);
    let values = evaluate(engine, trees, &pool);
    argmax(&pool, &values)
}

/// Candidate points for the farthest point from `centers`, filtered to the
/// ties that are actually attained.
pub fn candidate_set(engine: &GeodesicEngine, centers: &[Point2]) -> Result<CandidateSet> {
    let trees = trees_for(engine, centers)?;
    let pool = raw_candidates(engine, &trees);
    let values = evaluate(engine, &trees, &pool);
    let scale = engine.polygon().bbox_diagonal().max(1.0);
    let mut set = CandidateSet {
        voronoi_vertices: Vec::new(),
        edge_boundary_points: Vec::new(),
        polygon_vertices: Vec::new(),
    };
    for (c, &v) in pool.iter().zip(&values) {
        let attained = (c.tie - v).abs() <= 1e-7 * scale;
        match c.origin {
            Origin::Vertex => set.polygon_vertices.push(c.point),
            Origin::EdgeTie if attained => set.edge_boundary_points.push(c.point),
            Origin::InteriorTie if attained => {
                if engine.polygon().on_boundary(c.point, engine.eps()) {
                    set.edge_boundary_points.push(c.point)
                } else {
                    set.voronoi_vertices.push(c.point)
                }
            }
            _ => {}
        }
    }
    Ok(set)
}

/// The point of `P` farthest (geodesically) from the nearest center.
pub fn farthest_point_from_set(engine: &GeodesicEngine, centers: &[Point2]) -> Result<FarthestPoint> {
    let trees = trees_for(engine, centers)?;
    Ok(farthest_with(engine, &trees, CandidateMode::Exact))
}

/// Largest distance from a point of `P` to its nearest center.
pub fn covering_radius(engine: &GeodesicEngine, centers: &[Point2]) -> Result<f64> {
    Ok(farthest_point_from_set(engine, centers)?.distance)
}

pub fn gonzalez_placement(engine: &GeodesicEngine, k: usize) -> Result<PlacementResult> {
    gonzalez_placement_with(engine, k, CandidateMode::Exact)
}

pub fn gonzalez_placement_with(engine: &GeodesicEngine, k: usize, mode: CandidateMode) -> Result<PlacementResult> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    let poly = engine.polygon();
    if poly.n() == 0 {
        return Err(Error::EmptyPolygon);
    }
    if let CandidateMode::Grid(h) = mode {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParameter {
                name: "approx-grid",
                reason: format!("grid step must be positive, got {h}"),
            });
        }
    }
    let first = poly.vertex(0);
    let mut centers = vec![first];
    let mut trees = vec![engine.shortest_path_tree(first)?];
    let mut radii_trace = Vec::with_capacity(k);
    let mut saturated = false;
    let next = loop {
        let far = farthest_with(engine, &trees, mode);
        radii_trace.push(far.distance);
        if centers.len() == k {
            break far;
        }
        if far.distance <= engine.eps() {
            saturated = true;
            break far;
        }
        centers.push(far.point);
        trees.push(engine.shortest_path_tree(far.point)?);
    };

    let mut all = trees;
    all.push(engine.shortest_path_tree(next.point)?);
    let mut delta = f64::INFINITY;
    for i in 0..all.len() {
        let prof = engine.profile_unchecked(all[i].source);
        for t in &all[..i] {
            delta = delta.min(t.distance_to(engine, &prof));
        }
    }
    Ok(PlacementResult {
        centers,
        covering_radius: next.distance,
        radii_trace,
        next_farthest: next.point,
        certificate_delta: delta,
        saturated,
    })
}

/// Centers whose covering radius is at most twice the optimum.
pub fn k_cover(engine: &GeodesicEngine, k: usize) -> Result<KCover> {
    k_cover_with(engine, k, CandidateMode::Exact)
}

pub fn k_cover_with(engine: &GeodesicEngine, k: usize, mode: CandidateMode) -> Result<KCover> {
    let placement = gonzalez_placement_with(engine, k, mode)?;
    Ok(KCover {
        centers: placement.centers.clone(),
        radius: placement.covering_radius,
        placement,
    })
}

/// `k` disjoint disks of radius at least a quarter of the optimum.
pub fn k_pack(engine: &GeodesicEngine, k: usize) -> Result<KPacking> {
    k_pack_with(engine, k, CandidateMode::Exact)
}

pub fn k_pack_with(engine: &GeodesicEngine, k: usize, mode: CandidateMode) -> Result<KPacking> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    let placement = gonzalez_placement_with(engine, k, mode)?;
    let profiles: Vec<_> = placement.centers.iter().map(|&c| engine.profile_unchecked(c)).collect();
    let mut min_pair = f64::INFINITY;
    for i in 0..profiles.len() {
        for j in (i + 1)..profiles.len() {
            min_pair = min_pair.min(engine.profile_distance(&profiles[i], &profiles[j]));
        }
    }
    if !min_pair.is_finite() {
        min_pair = 0.0;
    }
    Ok(KPacking {
        centers: placement.centers,
        radius: min_pair / 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn square() -> GeodesicEngine {
        GeodesicEngine::new(shapes::unit_square())
    }

    #[test]
    fn center_of_square() {
        let e = square();
        let f = farthest_point_from_set(&e, &[pt(0.5, 0.5)]).unwrap();
        assert!((f.distance - 0.5f64.sqrt()).abs() < 1e-12);
        let set = candidate_set(&e, &[pt(0.5, 0.5)]).unwrap();
        assert_eq!(set.polygon_vertices.len(), 4);
    }

    #[test]
    fn four_corners() {
        let e = square();
        let c = [pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)];
        let f = farthest_point_from_set(&e, &c).unwrap();
        assert!((f.distance - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(f.point.approx_eq(pt(0.5, 0.5), 1e-9));
    }

    #[test]
    fn two_centers_bisector_hits_boundary() {
        let e = square();
        let set = candidate_set(&e, &[pt(0., 0.5), pt(1., 0.5)]).unwrap();
        for want in [pt(0.5, 0.), pt(0.5, 1.)] {
            assert!(set.edge_boundary_points.iter().any(|p| p.approx_eq(want, 1e-9)), "{set:?}");
        }
    }

    #[test]
    fn l_polygon_from_reflex_corner() {
        let e = GeodesicEngine::new(shapes::l_polygon());
        let f = farthest_point_from_set(&e, &[pt(1., 1.)]).unwrap();
        assert!((f.distance - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gonzalez_on_square() {
        let e = square();
        let p1 = gonzalez_placement(&e, 1).unwrap();
        assert_eq!(p1.centers, vec![pt(0., 0.)]);
        assert!((p1.covering_radius - 2f64.sqrt()).abs() < 1e-12);
        let p2 = gonzalez_placement(&e, 2).unwrap();
        assert_eq!(p2.centers[1], pt(1., 1.));
        // the two remaining corners are at distance 1 from both centers
        assert!((p2.covering_radius - 1.0).abs() < 1e-12);
        assert!(p2.certificate_holds(1e-9));
    }

    #[test]
    fn trace_is_non_increasing() {
        let e = GeodesicEngine::new(shapes::comb(4));
        let p = gonzalez_placement(&e, 5).unwrap();
        assert_eq!(p.radii_trace.len(), 5);
        for w in p.radii_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "{:?}", p.radii_trace);
        }
        assert!(p.certificate_holds(1e-9));
    }

    #[test]
    fn k_pack_on_square() {
        let e = square();
        let p = k_pack(&e, 2).unwrap();
        assert!((p.radius - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(k_pack(&e, 1), Err(Error::InvalidK(1)));
    }

    #[test]
    fn holes_are_supported() {
        let e = GeodesicEngine::new(shapes::square_with_hole());
        let p = gonzalez_placement(&e, 3).unwrap();
        assert!(p.certificate_holds(1e-9));
    }

    #[test]
    fn grid_mode_is_close() {
        let e = GeodesicEngine::new(shapes::l_polygon());
        let exact = k_cover(&e, 1).unwrap();
        let grid = k_cover_with(&e, 1, CandidateMode::Grid(0.05)).unwrap();
        assert!(grid.radius <= exact.radius + 1e-12);
        assert!(grid.radius >= exact.radius - 0.05);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        #[test]
        fn farthest_point_dominates(x in 0.0f64..2.0, y in 0.0f64..1.0, qx in 0.0f64..2.0, qy in 0.0f64..2.0) {
            let e = GeodesicEngine::new(shapes::l_polygon());
            let c = pt(x, y);
            let q = pt(qx, qy);
            proptest::prop_assume!(e.polygon().contains(q, 0.0));
            let far = farthest_point_from_set(&e, &[c]).unwrap();
            proptest::prop_assert!(e.distance(c, q).unwrap() <= far.distance + 1e-9);
            proptest::prop_assert!((e.distance(c, far.point).unwrap() - far.distance).abs() < 1e-9);
        }
    }
}
