//! Greedy geodesic disk packing in simple polygons.
//!
//! The candidate set starts as the polygon vertices. Each step takes the two
//! candidates farthest apart, places a center at one of them, removes every
//! candidate strictly within distance `2r` of it, and adds the points where
//! the new radius-`2r` disk boundary meets the boundary of the disks placed
//! so far or the uncovered polygon boundary.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::disk::{disk_boundary_from_tree, update_arrangement, ArrangementBoundary};
use crate::error::{Error, Result};
use crate::geometry::{GeodesicEngine, Point2};

pub use crate::oracle::brute::brute_force_max_packing;

/// Safety net against a runaway loop caused by numerical trouble.
const MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingStep {
    pub pair: (Point2, Point2),
    pub pair_distance: f64,
    pub center: Point2,
    /// Candidates available when the step began.
    pub candidates: usize,
    /// Candidates added by the step.
    pub added: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingResult {
    pub centers: Vec<Point2>,
    pub radius: f64,
    pub step_log: Vec<PackingStep>,
    /// Every candidate point that entered the candidate set.
    #[serde(skip)]
    pub candidates_seen: Vec<Point2>,
}

impl PackingResult {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

pub fn greedy_unit_packing(engine: &GeodesicEngine) -> Result<PackingResult> {
    greedy_packing(engine, 1.0)
}

/// Greedy packing with disks of radius `r` (placement disks of radius `2r`).
pub fn greedy_packing(engine: &GeodesicEngine, r: f64) -> Result<PackingResult> {
    let poly = engine.polygon();
    if poly.has_holes() {
        return Err(Error::PolygonHasHoles);
    }
    if poly.n() == 0 {
        return Err(Error::EmptyPolygon);
    }
    if !(r > engine.eps()) || !r.is_finite() {
        return Err(Error::NonPositiveRadius(r));
    }
    let reach = 2.0 * r;
    let interior_tol = 1e-9 * reach.max(1.0);

    let mut candidates: Vec<Point2> = poly.vertices().to_vec();
    let mut seen = candidates.clone();
    let mut arrangement = ArrangementBoundary::new();
    let mut centers = Vec::new();
    let mut step_log = Vec::new();

    while !candidates.is_empty() {
        if step_log.len() >= MAX_STEPS {
            return Err(Error::InvariantViolation("greedy packing did not terminate".into()));
        }
        let (u, v, d) = engine.diametral_pair(&candidates)?;
        let center = if u.lex_cmp(&v) == Ordering::Greater { u } else { v };
        let before = candidates.len();
        centers.push(center);

        let tree = engine.tree_from_profile(&engine.profile_unchecked(center));
        candidates.retain(|&p| tree.distance_to(engine, &engine.profile_unchecked(p)) >= reach - interior_tol);

        let boundary = disk_boundary_from_tree(engine, &tree, reach);
        let (next, new_points) = update_arrangement(engine, &arrangement, &boundary);
        arrangement = next;
        let mut added = 0;
        for p in new_points {
            if candidates.iter().any(|q| q.dist(p) <= 1e-9) {
                continue;
            }
            if arrangement.in_interior(engine, &engine.profile_unchecked(p)) {
                continue;
            }
            candidates.push(p);
            seen.push(p);
            added += 1;
        }
        step_log.push(PackingStep {
            pair: (u, v),
            pair_distance: d,
            center,
            candidates: before,
            added,
        });
    }
    Ok(PackingResult {
        centers,
        radius: r,
        step_log,
        candidates_seen: seen,
    })
}

/// True iff all pairwise center distances are at least `2r − ε`.
pub fn verify_packing(engine: &GeodesicEngine, centers: &[Point2], r: f64) -> Result<bool> {
    let profiles = centers
        .iter()
        .map(|&c| engine.profile(c))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..profiles.len() {
        for j in (i + 1)..profiles.len() {
            if engine.profile_distance(&profiles[i], &profiles[j]) < 2.0 * r - engine.eps() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn unit_square_takes_one_disk() {
        let e = GeodesicEngine::new(shapes::unit_square());
        let res = greedy_unit_packing(&e).unwrap();
        assert_eq!(res.len(), 1);
        assert!(e.polygon().vertices().contains(&res.centers[0]));
    }

    #[test]
    fn long_rectangle_needs_at_least_three() {
        let e = GeodesicEngine::new(shapes::rectangle(10.0, 1.0));
        let res = greedy_unit_packing(&e).unwrap();
        assert!(res.len() >= 3, "{:?}", res.centers);
        assert!(verify_packing(&e, &res.centers, 1.0).unwrap());
    }

    #[test]
    fn holes_are_rejected() {
        let e = GeodesicEngine::new(shapes::square_with_hole());
        assert_eq!(greedy_unit_packing(&e), Err(Error::PolygonHasHoles));
    }

    #[test]
    fn verify_packing_boundary_cases() {
        let e = GeodesicEngine::new(shapes::unit_square());
        let c = [pt(0.1, 0.5), pt(0.9, 0.5)];
        assert!(verify_packing(&e, &c, 0.4).unwrap());
        assert!(!verify_packing(&e, &c, 0.41).unwrap());
        let l = GeodesicEngine::new(shapes::l_polygon());
        assert!(verify_packing(&l, &[pt(2., 0.5), pt(0.5, 2.)], 1.25f64.sqrt()).unwrap());
    }
}
