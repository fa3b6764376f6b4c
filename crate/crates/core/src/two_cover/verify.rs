use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::edges::{cover_tol, Probe};
use crate::error::Result;
use crate::geometry::{triangulate, GeodesicEngine, Point2};

/// Boundary checks stop refining below this fraction of the edge length.
const EDGE_RESOLUTION: f64 = 1e-6;
pub const INTERIOR_SAMPLES: usize = 10_000;
const INTERIOR_SEED: u64 = 0x2c0_7e5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverCheck {
    pub boundary_covered: bool,
    /// First boundary point found outside both disks.
    pub boundary_witness: Option<Point2>,
    pub interior_samples: usize,
    pub interior_uncovered: usize,
}

impl TwoCoverCheck {
    pub fn passed(&self) -> bool {
        self.boundary_covered && self.interior_uncovered == 0
    }
}

fn covered(engine: &GeodesicEngine, probes: &[Probe; 2], lim: f64, q: Point2) -> [bool; 2] {
    [probes[0].dist(engine, q) <= lim, probes[1].dist(engine, q) <= lim]
}

/// Adaptive bisection over one edge: a sub-segment whose endpoints share a
/// disk is covered; otherwise its midpoint is tested and both halves refined.
fn edge_gap(engine: &GeodesicEngine, probes: &[Probe; 2], lim: f64, a: Point2, b: Point2) -> Option<Point2> {
    let min_len = a.dist(b) * EDGE_RESOLUTION;
    let ca = covered(engine, probes, lim, a);
    let cb = covered(engine, probes, lim, b);
    for (p, c) in [(a, ca), (b, cb)] {
        if !c[0] && !c[1] {
            return Some(p);
        }
    }
    let mut stack = vec![(a, ca, b, cb)];
    while let Some((p, cp, q, cq)) = stack.pop() {
        if (cp[0] && cq[0]) || (cp[1] && cq[1]) || p.dist(q) <= min_len {
            continue;
        }
        let m = p.midpoint(q);
        let cm = covered(engine, probes, lim, m);
        if !cm[0] && !cm[1] {
            return Some(m);
        }
        stack.push((m, cm, q, cq));
        stack.push((p, cp, m, cm));
    }
    None
}

pub(crate) fn boundary_gap(engine: &GeodesicEngine, probes: &[Probe; 2], r: f64) -> Option<Point2> {
    let lim = r + cover_tol(r);
    engine
        .polygon()
        .edges()
        .find_map(|e| edge_gap(engine, probes, lim, e.a, e.b))
}

/// Boundary coverage by adaptive bisection plus a fixed-seed interior sample.
pub fn verify_two_cover_detail(engine: &GeodesicEngine, c1: Point2, c2: Point2, r: f64) -> Result<TwoCoverCheck> {
    engine.check_inside(c1)?;
    engine.check_inside(c2)?;
    let probes = [Probe::new(engine, c1), Probe::new(engine, c2)];
    let gap = boundary_gap(engine, &probes, r);
    let lim = r + cover_tol(r);
    let tri = triangulate(engine.polygon());
    let mut rng = ChaCha8Rng::seed_from_u64(INTERIOR_SEED);
    let samples: Vec<Point2> = (0..INTERIOR_SAMPLES).map(|_| tri.sample(&mut rng)).collect();
    let interior_uncovered = samples
        .par_iter()
        .filter(|&&q| {
            let c = covered(engine, &probes, lim, q);
            !c[0] && !c[1]
        })
        .count();
    Ok(TwoCoverCheck {
        boundary_covered: gap.is_none(),
        boundary_witness: gap,
        interior_samples: INTERIOR_SAMPLES,
        interior_uncovered,
    })
}

pub fn verify_two_cover(engine: &GeodesicEngine, c1: Point2, c2: Point2, r: f64) -> Result<bool> {
    Ok(verify_two_cover_detail(engine, c1, c2, r)?.passed())
}
