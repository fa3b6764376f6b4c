//! Randomized property checks over one polygon.
//!
//! Each property yields one report line
//! `PROPERTY <name> PASS|FAIL <witness or summary>`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{gonzalez_placement, k_cover, k_pack};
use crate::disk::GeodesicDisk;
use crate::error::Error;
use crate::geometry::point::segments_cross_properly;
use crate::geometry::{triangulate, GeodesicEngine, Point2};
use crate::oracle::brute::{brute_force_max_packing, node_grid};
use crate::packing::{greedy_packing, verify_packing};
use crate::two_cover::{uncovered_edges, verify_two_cover_detail};

const METRIC_TOL: f64 = 1e-9;
const EUCLID_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Metric,
    Lemmas,
    Ratios,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(Suite::All),
            "metric" => Ok(Suite::Metric),
            "lemmas" => Ok(Suite::Lemmas),
            "ratios" => Ok(Suite::Ratios),
            other => Err(Error::InvalidParameter {
                name: "suite",
                reason: format!("expected all, metric, lemmas or ratios, got {other:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    /// Counterexample for failures, a short summary otherwise.
    pub detail: String,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "PROPERTY {} {} {}", self.name, status, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub budget: usize,
    pub results: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn lines(&self) -> Vec<String> {
        self.results.iter().map(|r| r.to_string()).collect()
    }
}

fn fmt_pt(p: Point2) -> String {
    format!("({:.6},{:.6})", p.x, p.y)
}

fn outcome(name: &str, checks: usize, failure: Option<String>) -> PropertyResult {
    PropertyResult {
        name: name.to_string(),
        passed: failure.is_none(),
        checks,
        detail: failure.unwrap_or_else(|| format!("{checks} checks")),
    }
}

fn skipped(name: &str, why: &str) -> PropertyResult {
    PropertyResult {
        name: name.to_string(),
        passed: true,
        checks: 0,
        detail: format!("not applicable: {why}"),
    }
}

/// Random points: a polygon vertex with probability 1/3, otherwise a
/// uniform interior sample.
fn sample_points(engine: &GeodesicEngine, count: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    let tri = triangulate(engine.polygon());
    let verts = engine.polygon().vertices();
    (0..count)
        .map(|_| {
            if rng.gen_range(0..3) == 0 {
                verts[rng.gen_range(0..verts.len())]
            } else {
                tri.sample(rng)
            }
        })
        .collect()
}

fn dist(engine: &GeodesicEngine, a: Point2, b: Point2) -> f64 {
    engine.distance(a, b).unwrap_or(f64::NAN)
}

/// Runs the selected suites with `budget` random triples per metric property.
pub fn property_suites(engine: &GeodesicEngine, budget: usize, seed: u64, suite: Suite) -> SuiteReport {
    let mut results = Vec::new();
    if suite.includes(Suite::Metric) {
        results.extend(metric_suite(engine, budget, seed));
    }
    if suite.includes(Suite::Lemmas) {
        results.extend(lemma_suite(engine, budget, seed.wrapping_add(1)));
    }
    if suite.includes(Suite::Ratios) {
        results.extend(ratio_suite(engine, seed.wrapping_add(2)));
    }
    SuiteReport { seed, budget, results }
}

pub fn metric_suite(engine: &GeodesicEngine, budget: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = sample_points(engine, 3 * budget, &mut rng);
    let triples: Vec<[Point2; 3]> = pts.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    let dists: Vec<[f64; 6]> = triples
        .par_iter()
        .map(|&[x, y, z]| {
            [
                dist(engine, x, y),
                dist(engine, y, x),
                dist(engine, y, z),
                dist(engine, z, y),
                dist(engine, x, z),
                dist(engine, z, x),
            ]
        })
        .collect();

    let mut out = Vec::new();
    let failure = triples.iter().zip(&dists).find_map(|(t, d)| {
        (0..3).find_map(|k| {
            let (a, b) = (d[2 * k], d[2 * k + 1]);
            (!((a - b).abs() <= METRIC_TOL)).then(|| {
                let (p, q) = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])][k];
                format!("d{}={a:.12} d{}={b:.12}", fmt_pt(p), fmt_pt(q))
            })
        })
    });
    out.push(outcome("metric.symmetry", 3 * triples.len(), failure));

    let failure = triples.iter().find_map(|t| {
        let d = dist(engine, t[0], t[0]);
        (!(d.abs() <= METRIC_TOL)).then(|| format!("d(p,p)={d:e} at {}", fmt_pt(t[0])))
    });
    out.push(outcome("metric.identity", triples.len(), failure));

    let mut failure = triples.iter().zip(&dists).find_map(|(t, d)| {
        let (xy, yz, xz) = (d[0], d[2], d[4]);
        let sides = [(xz, xy + yz, "x-z"), (xy, xz + yz, "x-y"), (yz, xy + xz, "y-z")];
        sides.iter().find_map(|&(lhs, rhs, which)| {
            (!(lhs <= rhs + METRIC_TOL)).then(|| {
                format!(
                    "x={} y={} z={} side {which}: {lhs:.12} > {rhs:.12}",
                    fmt_pt(t[0]),
                    fmt_pt(t[1]),
                    fmt_pt(t[2])
                )
            })
        })
    });
    let (pool_checks, pool_failure) = pool_triangle(engine);
    if failure.is_none() {
        failure = pool_failure;
    }
    out.push(outcome("metric.triangle", 3 * triples.len() + pool_checks, failure));

    let poly = engine.polygon();
    if poly.has_holes() || !poly.reflex_vertices().is_empty() {
        out.push(skipped("metric.convex_euclidean", "polygon is not convex"));
    } else {
        let failure = triples.iter().zip(&dists).find_map(|(t, d)| {
            let e = t[0].dist(t[1]);
            (!((d[0] - e).abs() <= EUCLID_REL_TOL * e.max(1.0))).then(|| {
                format!("{} {}: geodesic {:.15} euclid {e:.15}", fmt_pt(t[0]), fmt_pt(t[1]), d[0])
            })
        });
        out.push(outcome("metric.convex_euclidean", triples.len(), failure));
    }

    out.push(quadrilateral(engine, budget, &mut rng));
    out
}

/// Vertices, edge midpoints and midpoints of vertex visibility segments.
fn probe_pool(engine: &GeodesicEngine) -> Vec<Point2> {
    let poly = engine.polygon();
    let g = engine.visibility_graph();
    let mut pool: Vec<Point2> = poly.vertices().to_vec();
    pool.extend(poly.edges().map(|e| e.point_at(0.5)));
    for u in 0..poly.n() {
        for &(v, _) in &g.adjacency[u] {
            if u < v && v < poly.n() && poly.next(u) != v && poly.next(v) != u {
                pool.push(g.nodes[u].midpoint(g.nodes[v]));
            }
        }
    }
    pool
}

/// Triangle inequality over every triple of the probe pool.
fn pool_triangle(engine: &GeodesicEngine) -> (usize, Option<String>) {
    let pool = probe_pool(engine);
    let m = pool.len();
    let d: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|j| dist(engine, pool[i], pool[j])).collect())
        .collect();
    let failure = (0..m).find_map(|i| {
        (0..m).find_map(|j| {
            (0..m).find_map(|k| {
                (!(d[i][k] <= d[i][j] + d[j][k] + METRIC_TOL)).then(|| {
                    format!(
                        "x={} y={} z={}: d(x,z)={:.12} > {:.12}",
                        fmt_pt(pool[i]),
                        fmt_pt(pool[j]),
                        fmt_pt(pool[k]),
                        d[i][k],
                        d[i][j] + d[j][k]
                    )
                })
            })
        })
    });
    (m * m * m, failure)
}

fn polylines_cross(a: &[Point2], b: &[Point2]) -> bool {
    a.windows(2)
        .any(|s| b.windows(2).any(|t| segments_cross_properly(s[0], s[1], t[0], t[1], 1e-12)))
}

/// When the shortest paths `a–c` and `b–d` cross, the two diagonals are at
/// least as long as either pair of opposite sides.
fn quadrilateral(engine: &GeodesicEngine, budget: usize, rng: &mut ChaCha8Rng) -> PropertyResult {
    let pts = sample_points(engine, 4 * budget, rng);
    let quads: Vec<&[Point2]> = pts.chunks_exact(4).collect();
    let found: Vec<(usize, Option<String>)> = quads
        .par_iter()
        .map(|q| {
            let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
            let (Ok(ac), Ok(bd)) = (engine.shortest_path(a, c), engine.shortest_path(b, d)) else {
                return (0, Some("shortest path failed".into()));
            };
            if !polylines_cross(&ac.waypoints, &bd.waypoints) {
                return (0, None);
            }
            let diag = ac.length + bd.length;
            let s1 = dist(engine, a, b) + dist(engine, c, d);
            let s2 = dist(engine, a, d) + dist(engine, b, c);
            let bad = !(diag + METRIC_TOL >= s1.max(s2));
            let msg = bad.then(|| {
                format!(
                    "a={} b={} c={} d={}: diagonals {diag:.12} < sides {:.12}",
                    fmt_pt(a),
                    fmt_pt(b),
                    fmt_pt(c),
                    fmt_pt(d),
                    s1.max(s2)
                )
            });
            (1, msg)
        })
        .collect();
    let checks = found.iter().map(|f| f.0).sum();
    let failure = found.into_iter().find_map(|f| f.1);
    outcome("metric.quadrilateral", checks, failure)
}

pub fn lemma_suite(engine: &GeodesicEngine, budget: usize, seed: u64) -> Vec<PropertyResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![far_point_lemma(engine, budget, &mut rng)];
    if engine.polygon().has_holes() {
        out.push(skipped("lemma.two_uncovered_edges", "polygon has holes"));
        out.push(skipped("lemma.boundary_implies_interior", "polygon has holes"));
        return out;
    }
    let trials = (budget / 25).clamp(4, 40);
    let pairs: Vec<(Point2, Point2)> = sample_points(engine, 2 * trials, &mut rng)
        .chunks_exact(2)
        .map(|c| (c[0], c[1]))
        .collect();

    // smallest radius covering all vertices, then a few larger ones
    let poly = engine.polygon();
    let mut checks = 0;
    let mut failure = None;
    for &(c1, c2) in &pairs {
        let (Ok(t1), Ok(t2)) = (engine.shortest_path_tree(c1), engine.shortest_path_tree(c2)) else {
            continue;
        };
        let r0 = (0..poly.n()).map(|v| t1.dist[v].min(t2.dist[v])).fold(0.0, f64::max);
        if r0 <= engine.eps() {
            continue;
        }
        for f in [1.0, 1.05, 1.2] {
            let r = r0 * f * (1.0 + 1e-9);
            checks += 1;
            match uncovered_edges(engine, &GeodesicDisk::new(c1, r), &GeodesicDisk::new(c2, r)) {
                Ok(_) => {}
                Err(e) => {
                    failure.get_or_insert(format!("c1={} c2={} r={r:.9}: {e}", fmt_pt(c1), fmt_pt(c2)));
                }
            }
        }
    }
    out.push(outcome("lemma.two_uncovered_edges", checks, failure));

    let mut checks = 0;
    let mut failure = None;
    for &(c1, c2) in pairs.iter().take(8) {
        let Some(r) = boundary_radius(engine, c1, c2) else { continue };
        let Ok(check) = verify_two_cover_detail(engine, c1, c2, r * (1.0 + 1e-9) + 1e-12) else {
            continue;
        };
        if !check.boundary_covered {
            continue;
        }
        checks += check.interior_samples;
        if check.interior_uncovered > 0 {
            failure.get_or_insert(format!(
                "c1={} c2={} r={r:.9}: {} interior samples uncovered",
                fmt_pt(c1),
                fmt_pt(c2),
                check.interior_uncovered
            ));
        }
    }
    out.push(outcome("lemma.boundary_implies_interior", checks, failure));
    out
}

/// Smallest radius at which two disks at `c1`, `c2` cover `∂P`, from dense
/// edge sampling refined at the switch between the nearer centers.
fn boundary_radius(engine: &GeodesicEngine, c1: Point2, c2: Point2) -> Option<f64> {
    let t1 = engine.shortest_path_tree(c1).ok()?;
    let t2 = engine.shortest_path_tree(c2).ok()?;
    let d = |q: Point2| {
        let p = engine.profile_unchecked(q);
        (t1.distance_to(engine, &p), t2.distance_to(engine, &p))
    };
    let mut worst: f64 = 0.0;
    for e in engine.polygon().edges() {
        const STEPS: usize = 64;
        let vals: Vec<(f64, f64)> = (0..=STEPS).map(|i| d(e.point_at(i as f64 / STEPS as f64))).collect();
        for (i, &(a, b)) in vals.iter().enumerate() {
            worst = worst.max(a.min(b));
            if i == 0 {
                continue;
            }
            let (pa, pb) = vals[i - 1];
            if (pa - pb).signum() != (a - b).signum() {
                let (mut lo, mut hi) = ((i - 1) as f64 / STEPS as f64, i as f64 / STEPS as f64);
                let lo_sign = (pa - pb).signum();
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let (x, y) = d(e.point_at(mid));
                    if (x - y).signum() == lo_sign {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                for t in [lo, hi] {
                    let (x, y) = d(e.point_at(t));
                    worst = worst.max(x.min(y));
                }
            }
        }
    }
    Some(worst)
}

/// For a random finite subset `S`, any `v ∈ S` and its farthest point `u`
/// in `S`: every triple of `S` has a pair at most `max d(u, ·)` apart.
fn far_point_lemma(engine: &GeodesicEngine, budget: usize, rng: &mut ChaCha8Rng) -> PropertyResult {
    let subset_size = 24;
    let subsets = (budget / 50).clamp(2, 20);
    let mut checks = 0;
    let mut failure = None;
    for _ in 0..subsets {
        let s = sample_points(engine, subset_size, rng);
        let m = s.len();
        let d: Vec<Vec<f64>> = (0..m)
            .into_par_iter()
            .map(|i| (0..m).map(|j| dist(engine, s[i], s[j])).collect())
            .collect();
        let v = rng.gen_range(0..m);
        let u = (0..m).max_by(|&a, &b| d[v][a].total_cmp(&d[v][b])).unwrap_or(v);
        for x in 0..m {
            for y in (x + 1)..m {
                for z in (y + 1)..m {
                    checks += 1;
                    let far = d[u][x].max(d[u][y]).max(d[u][z]);
                    let near = d[x][y].min(d[x][z]).min(d[y][z]);
                    if !(far + METRIC_TOL >= near) && failure.is_none() {
                        failure = Some(format!(
                            "u={} x={} y={} z={}: {far:.12} < {near:.12}",
                            fmt_pt(s[u]),
                            fmt_pt(s[x]),
                            fmt_pt(s[y]),
                            fmt_pt(s[z])
                        ));
                    }
                }
            }
        }
    }
    outcome("lemma.far_point", checks, failure)
}

pub fn ratio_suite(engine: &GeodesicEngine, seed: u64) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    let mut checks = 0;
    let mut failure = None;
    let mut covers = Vec::new();
    for k in 1..=4 {
        match gonzalez_placement(engine, k) {
            Ok(p) => {
                checks += 1;
                if !p.certificate_holds(METRIC_TOL) {
                    failure.get_or_insert(format!(
                        "k={k}: delta {:.12} < radius {:.12}",
                        p.certificate_delta, p.covering_radius
                    ));
                }
                covers.push(p.covering_radius);
            }
            Err(e) => {
                failure.get_or_insert(format!("k={k}: {e}"));
            }
        }
    }
    out.push(outcome("ratio.gonzalez_certificate", checks, failure));

    let mut checks = 0;
    let mut failure = None;
    for k in 2..=4 {
        let (Ok(pack), Ok(cover)) = (k_pack(engine, k), k_cover(engine, k)) else {
            failure.get_or_insert(format!("k={k}: placement failed"));
            continue;
        };
        checks += 1;
        if !(pack.radius <= 2.0 * cover.radius + METRIC_TOL) {
            failure.get_or_insert(format!("k={k}: s={:.12} > 2r={:.12}", pack.radius, 2.0 * cover.radius));
        }
        match verify_packing(engine, &pack.centers, pack.radius) {
            Ok(true) => {}
            _ => {
                failure.get_or_insert(format!("k={k}: k_pack result is not a packing"));
            }
        }
    }
    out.push(outcome("ratio.pack_vs_cover", checks, failure));

    if engine.polygon().has_holes() {
        out.push(skipped("ratio.greedy_packing", "polygon has holes"));
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag = engine.polygon().bbox_diagonal();
    let mut checks = 0;
    let mut failure = None;
    for _ in 0..3 {
        let r = diag * rng.gen_range(0.08..0.25);
        let Ok(res) = greedy_packing(engine, r) else {
            failure.get_or_insert(format!("r={r:.6}: greedy packing failed"));
            continue;
        };
        checks += 1;
        if !verify_packing(engine, &res.centers, r).unwrap_or(false) {
            failure.get_or_insert(format!("r={r:.6}: output is not a packing"));
            continue;
        }
        let step = diag / 12.0;
        if node_grid(engine, step).len() <= 200 {
            if let Ok(opt) = brute_force_max_packing(engine, r, step) {
                if opt > 2 * res.len() {
                    failure.get_or_insert(format!("r={r:.6}: grid optimum {opt} > 2·{}", res.len()));
                }
            }
        }
    }
    out.push(outcome("ratio.greedy_packing", checks, failure));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn convex_and_l_pass() {
        for poly in [shapes::convex_pentagon(), shapes::l_polygon()] {
            let e = GeodesicEngine::new(poly);
            let rep = property_suites(&e, 60, 7, Suite::All);
            assert!(rep.passed(), "{:#?}", rep.lines());
        }
    }

    #[test]
    fn corrupted_edge_fails_triangle() {
        let e = GeodesicEngine::new(shapes::convex_pentagon());
        let bad = e.with_edge_weight_factor(0, 1, 1.1).unwrap();
        let rep = property_suites(&bad, 200, 7, Suite::Metric);
        assert!(!rep.get("metric.triangle").unwrap().passed, "{:#?}", rep.lines());
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("lemmas".parse::<Suite>().unwrap(), Suite::Lemmas);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
