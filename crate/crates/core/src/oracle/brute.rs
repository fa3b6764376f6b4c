//! Exhaustive searches over grid candidates.
//!
//! All searches use exact geodesic distances between the discrete points;
//! the discretization is the only approximation. Limits guard against
//! instances too large for exhaustive enumeration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GeodesicEngine, Point2, PointProfile, ShortestPathTree};

/// Candidate count accepted by [`brute_force_max_packing`].
pub const MAX_PACKING_CANDIDATES: usize = 600;
/// Subset count accepted by the k-subset enumerations.
pub const MAX_SUBSETS: f64 = 1e6;
/// Pair count accepted by [`brute_force_two_cover`].
pub const MAX_PAIRS: f64 = 6e7;

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "grid_step",
            reason: format!("must be positive, got {step}"),
        })
    }
}

/// Lattice points `lo + (i, j)·step` in the polygon.
pub fn node_grid(engine: &GeodesicEngine, step: f64) -> Vec<Point2> {
    let (lo, hi) = engine.polygon().bbox();
    let nx = ((hi.x - lo.x) / step + 1e-9).floor() as usize;
    let ny = ((hi.y - lo.y) / step + 1e-9).floor() as usize;
    let mut out = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            let p = Point2::new(lo.x + i as f64 * step, lo.y + j as f64 * step);
            if engine.polygon().contains(p, engine.eps()) {
                out.push(p);
            }
        }
    }
    out
}

/// Points along every polygon edge with spacing at most `spacing`, vertices included.
pub fn boundary_samples(engine: &GeodesicEngine, spacing: f64) -> Vec<Point2> {
    let mut out = Vec::new();
    for e in engine.polygon().edges() {
        let m = (e.length() / spacing).ceil().max(1.0) as usize;
        for k in 0..m {
            out.push(e.point_at(k as f64 / m as f64));
        }
    }
    out
}

fn dedup_points(mut pts: Vec<Point2>) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::with_capacity(pts.len());
    pts.sort_by(|a, b| a.lex_cmp(b));
    for p in pts {
        if out.last().is_none_or(|q| q.dist(p) > 1e-12) {
            out.push(p);
        }
    }
    out
}

/// Row-major `centers × targets` distance matrix.
fn distance_matrix(engine: &GeodesicEngine, centers: &[Point2], targets: &[PointProfile]) -> Vec<Vec<f64>> {
    centers
        .par_iter()
        .map(|&c| {
            let tree = engine.tree_from_profile(&engine.profile_unchecked(c));
            targets.iter().map(|t| tree.distance_to(engine, t)).collect()
        })
        .collect()
}

fn profiles(engine: &GeodesicEngine, pts: &[Point2]) -> Vec<PointProfile> {
    pts.par_iter().map(|&p| engine.profile_unchecked(p)).collect()
}

/// Size of a maximum set of cell-centered grid points with pairwise geodesic
/// distance at least `2r`.
pub fn brute_force_max_packing(engine: &GeodesicEngine, r: f64, grid_step: f64) -> Result<usize> {
    check_step(grid_step)?;
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    let pts = node_grid(engine, grid_step);
    if pts.len() > MAX_PACKING_CANDIDATES {
        return Err(Error::TooManyCandidates {
            count: pts.len(),
            limit: MAX_PACKING_CANDIDATES,
        });
    }
    let profs = profiles(engine, &pts);
    let m = pts.len();
    let limit = 2.0 * r - 1e-9;
    let conflict: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| i != j && engine.profile_distance(&profs[i], &profs[j]) < limit)
                .collect()
        })
        .collect();
    Ok(max_independent_set(&conflict))
}

type Bits = Vec<u64>;

fn bits_with(m: usize, members: impl Iterator<Item = usize>) -> Bits {
    let mut b = vec![0u64; m.div_ceil(64)];
    for i in members {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + t)
            }
        })
    })
}

fn bits_count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

/// Exact maximum independent set by branch and bound with a clique-cover bound.
pub fn max_independent_set(conflict: &[Vec<bool>]) -> usize {
    let m = conflict.len();
    let nbr: Vec<Bits> = (0..m)
        .map(|i| bits_with(m, (0..m).filter(|&j| conflict[i][j])))
        .collect();
    let all = bits_with(m, 0..m);
    let mut best = 0;
    mis_rec(&nbr, all, 0, &mut best);
    best
}

fn clique_cover_bound(nbr: &[Bits], cand: &Bits) -> usize {
    let mut left = cand.clone();
    let mut cliques = 0;
    loop {
        let Some(v) = bits_iter(&left).next() else {
            break;
        };
        cliques += 1;
        let mut clique_mask = nbr[v].clone();
        left[v / 64] &= !(1 << (v % 64));
        let members: Vec<usize> = bits_iter(&left).collect();
        for u in members {
            if clique_mask[u / 64] >> (u % 64) & 1 == 1 {
                left[u / 64] &= !(1 << (u % 64));
                for (cm, nu) in clique_mask.iter_mut().zip(&nbr[u]) {
                    *cm &= nu;
                }
            }
        }
    }
    cliques
}

fn mis_rec(nbr: &[Bits], cand: Bits, size: usize, best: &mut usize) {
    let count = bits_count(&cand);
    if count == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + count <= *best || size + clique_cover_bound(nbr, &cand) <= *best {
        return;
    }
    // branch on the vertex with fewest remaining conflicts
    let v = bits_iter(&cand)
        .min_by_key(|&v| {
            nbr[v]
                .iter()
                .zip(&cand)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .expect("candidates remain");
    let mut with_v = cand.clone();
    for (w, n) in with_v.iter_mut().zip(&nbr[v]) {
        *w &= !n;
    }
    with_v[v / 64] &= !(1 << (v % 64));
    mis_rec(nbr, with_v, size + 1, best);
    let deg = nbr[v].iter().zip(&cand).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
    if deg == 0 {
        // an isolated vertex always belongs to some maximum set
        return;
    }
    let mut without = cand;
    without[v / 64] &= !(1 << (v % 64));
    mis_rec(nbr, without, size, best);
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Best discrete k-cover found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteCover {
    pub radius: f64,
    pub centers: Vec<Point2>,
}

/// Candidate centers (lattice points and vertices) and evaluation points
/// (half-step lattice, boundary samples, vertices).
fn cover_instance(engine: &GeodesicEngine, grid_step: f64, interior: bool) -> (Vec<Point2>, Vec<Point2>) {
    let mut centers = node_grid(engine, grid_step);
    centers.extend_from_slice(engine.polygon().vertices());
    let centers = dedup_points(centers);
    let mut evals = boundary_samples(engine, grid_step / 4.0);
    if interior {
        evals.extend(node_grid(engine, grid_step / 2.0));
    }
    (centers, dedup_points(evals))
}

/// Minimum over k-subsets of grid candidate centers of the covering radius,
/// measured on a finer set of evaluation points.
pub fn brute_force_k_cover(engine: &GeodesicEngine, k: usize, grid_step: f64) -> Result<BruteCover> {
    check_step(grid_step)?;
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    let (centers, evals) = cover_instance(engine, grid_step, true);
    let subsets = binomial(centers.len(), k.min(centers.len()));
    if subsets > MAX_SUBSETS {
        return Err(Error::TooManyCandidates {
            count: subsets as usize,
            limit: MAX_SUBSETS as usize,
        });
    }
    let dist = distance_matrix(engine, &centers, &profiles(engine, &evals));
    let k = k.min(centers.len());
    let m = centers.len();
    // parallel over the first center; deterministic reduction by (radius, indices)
    let best = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut best = (f64::INFINITY, Vec::new());
            let mut chosen = vec![first];
            let mins = dist[first].clone();
            cover_rec(&dist, k, &mut chosen, mins, &mut best);
            best
        })
        .reduce(
            || (f64::INFINITY, Vec::new()),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(BruteCover {
        radius: best.0,
        centers: best.1.iter().map(|&i| centers[i]).collect(),
    })
}

fn cover_rec(dist: &[Vec<f64>], k: usize, chosen: &mut Vec<usize>, mins: Vec<f64>, best: &mut (f64, Vec<usize>)) {
    if chosen.len() == k {
        let r = mins.iter().copied().fold(0.0, f64::max);
        if r < best.0 {
            *best = (r, chosen.clone());
        }
        return;
    }
    let last = *chosen.last().expect("non-empty");
    let need = k - chosen.len();
    for next in (last + 1)..=(dist.len() - need) {
        let row = &dist[next];
        let merged: Vec<f64> = mins.iter().zip(row).map(|(a, b)| a.min(*b)).collect();
        chosen.push(next);
        cover_rec(dist, k, chosen, merged, best);
        chosen.pop();
    }
}

/// Best two-disk cover over pairs of grid centers, measured on boundary
/// samples only (enough for simple polygons, whose disks cover the interior
/// once they cover the boundary).
pub fn brute_force_two_cover(engine: &GeodesicEngine, grid_step: f64) -> Result<BruteCover> {
    check_step(grid_step)?;
    if engine.polygon().has_holes() {
        return Err(Error::PolygonHasHoles);
    }
    let (centers, evals) = cover_instance(engine, grid_step, false);
    let pairs = binomial(centers.len() + 1, 2);
    if pairs > MAX_PAIRS {
        return Err(Error::TooManyCandidates {
            count: pairs as usize,
            limit: MAX_PAIRS as usize,
        });
    }
    let eval_profiles = profiles(engine, &evals);
    let mut dist = distance_matrix(engine, &centers, &eval_profiles);
    // evaluation order: points far from the polygon's center of mass first
    let mean = evals.iter().fold(Point2::default(), |a, &p| a + p) * (1.0 / evals.len() as f64);
    let mut order: Vec<usize> = (0..evals.len()).collect();
    order.sort_by(|&a, &b| evals[b].dist(mean).total_cmp(&evals[a].dist(mean)));
    for row in dist.iter_mut() {
        let reordered: Vec<f64> = order.iter().map(|&i| row[i]).collect();
        *row = reordered;
    }
    let single: Vec<f64> = dist.iter().map(|row| row.iter().copied().fold(0.0, f64::max)).collect();
    let m = centers.len();
    let solo = (0..m)
        .min_by(|&a, &b| single[a].total_cmp(&single[b]))
        .expect("polygon has vertices");
    let bound = single[solo];
    // only pairs strictly better than the best single disk are of interest
    let best = (0..m)
        .into_par_iter()
        .filter_map(|i| {
            let mut row_best: Option<(f64, usize)> = None;
            for j in (i + 1)..m {
                let limit = row_best.map_or(bound, |b| b.0);
                let mut worst = 0.0f64;
                let mut pruned = false;
                for (x, y) in dist[i].iter().zip(&dist[j]) {
                    let v = x.min(*y);
                    if v > worst {
                        worst = v;
                        if worst >= limit {
                            pruned = true;
                            break;
                        }
                    }
                }
                if !pruned {
                    row_best = Some((worst, j));
                }
            }
            row_best.map(|(r, j)| (r, i, j))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    Ok(match best {
        Some((radius, i, j)) => BruteCover {
            radius,
            centers: vec![centers[i], centers[j]],
        },
        None => BruteCover {
            radius: bound,
            centers: vec![centers[solo], centers[solo]],
        },
    })
}

/// Largest `s` such that some k grid candidates are pairwise `2s` apart.
pub fn brute_force_k_packing_radius(engine: &GeodesicEngine, k: usize, grid_step: f64) -> Result<f64> {
    check_step(grid_step)?;
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    let mut pts = node_grid(engine, grid_step);
    pts.extend_from_slice(engine.polygon().vertices());
    let pts = dedup_points(pts);
    let profs = profiles(engine, &pts);
    let m = pts.len();
    if binomial(m, k) > MAX_SUBSETS * 100.0 {
        return Err(Error::TooManyCandidates {
            count: binomial(m, k) as usize,
            limit: (MAX_SUBSETS * 100.0) as usize,
        });
    }
    let dist: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|j| engine.profile_distance(&profs[i], &profs[j])).collect())
        .collect();
    let mut best = 0.0;
    let mut chosen = Vec::with_capacity(k);
    pack_rec(&dist, k, 0, f64::INFINITY, &mut chosen, &mut best);
    Ok(best / 2.0)
}

fn pack_rec(dist: &[Vec<f64>], k: usize, from: usize, current: f64, chosen: &mut Vec<usize>, best: &mut f64) {
    if chosen.len() == k {
        if current > *best {
            *best = current;
        }
        return;
    }
    let need = k - chosen.len();
    for next in from..=(dist.len() - need) {
        let mut cur = current;
        for &c in chosen.iter() {
            cur = cur.min(dist[c][next]);
        }
        if cur <= *best {
            continue;
        }
        chosen.push(next);
        pack_rec(dist, k, next + 1, cur, chosen, best);
        chosen.pop();
    }
}

/// Distances from one center to many targets, via its shortest-path tree.
pub fn tree_distances(engine: &GeodesicEngine, tree: &ShortestPathTree, targets: &[PointProfile]) -> Vec<f64> {
    targets.iter().map(|t| tree.distance_to(engine, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn mis_on_small_graphs() {
        // path on 4 vertices
        let mut c = vec![vec![false; 4]; 4];
        for i in 0..3 {
            c[i][i + 1] = true;
            c[i + 1][i] = true;
        }
        assert_eq!(max_independent_set(&c), 2);
        let k4 = vec![vec![true; 4]; 4];
        assert_eq!(max_independent_set(&k4), 1);
        assert_eq!(max_independent_set(&vec![vec![false; 5]; 5]), 5);
    }

    #[test]
    fn square_packing_counts() {
        let e = GeodesicEngine::new(shapes::unit_square());
        assert_eq!(brute_force_max_packing(&e, 1.0, 0.25).unwrap(), 1);
        // the 3×3 lattice of spacing 0.5 = 2r is pairwise touching
        assert_eq!(brute_force_max_packing(&e, 0.25, 0.5).unwrap(), 9);
    }

    #[test]
    fn square_one_cover() {
        let e = GeodesicEngine::new(shapes::unit_square());
        let c = brute_force_k_cover(&e, 1, 0.05).unwrap();
        assert!((c.radius - 0.5f64.sqrt()).abs() < 1e-9);
        assert_eq!(c.centers, vec![Point2::new(0.5, 0.5)]);
    }
}
