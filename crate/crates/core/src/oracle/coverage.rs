//! Sampled coverage checking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::disk::GeodesicDisk;
use crate::geometry::{GeodesicEngine, Point2};

/// Stratified jittered samples in the polygon plus all vertices and edge midpoints.
pub fn coverage_samples(engine: &GeodesicEngine, samples: usize, seed: u64) -> Vec<Point2> {
    let poly = engine.polygon();
    let (lo, hi) = poly.bbox();
    let side = (samples.max(1) as f64).sqrt().ceil() as usize;
    let (w, h) = ((hi.x - lo.x) / side as f64, (hi.y - lo.y) / side as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point2> = poly.vertices().to_vec();
    pts.extend(poly.edges().map(|e| e.point_at(0.5)));
    for j in 0..side {
        for i in 0..side {
            let p = Point2::new(
                lo.x + (i as f64 + rng.gen::<f64>()) * w,
                lo.y + (j as f64 + rng.gen::<f64>()) * h,
            );
            if poly.contains(p, engine.eps()) {
                pts.push(p);
            }
        }
    }
    pts
}

/// Largest `min_i (d(c_i, q) − r_i)` over the sample points `q`.
///
/// A value `≤ 0` means no sample witnesses a coverage gap. With no disks
/// the result is `+∞`.
pub fn sampled_coverage_gap(engine: &GeodesicEngine, disks: &[GeodesicDisk], samples: usize, seed: u64) -> f64 {
    if disks.is_empty() {
        return f64::INFINITY;
    }
    let pts = coverage_samples(engine, samples, seed);
    let trees: Vec<_> = disks
        .iter()
        .map(|d| engine.tree_from_profile(&engine.profile_unchecked(d.center)))
        .collect();
    pts.par_iter()
        .map(|&q| {
            let prof = engine.profile_unchecked(q);
            disks
                .iter()
                .zip(&trees)
                .map(|(d, t)| t.distance_to(engine, &prof) - d.radius)
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}
