use geodisk::covering::{candidate_set, covering_radius, gonzalez_placement, k_cover, k_pack};
use geodisk::geometry::GeodesicEngine;
use geodisk::oracle::brute::node_grid;
use geodisk::packing::verify_packing;
use geodisk::{shapes, Point2};

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn dense_max(e: &GeodesicEngine, centers: &[Point2], h: f64) -> (Point2, f64) {
    let trees: Vec<_> = centers.iter().map(|&c| e.shortest_path_tree(c).unwrap()).collect();
    node_grid(e, h)
        .into_iter()
        .map(|q| {
            let prof = e.profile(q).unwrap();
            (q, trees.iter().map(|t| t.distance_to(e, &prof)).fold(f64::INFINITY, f64::min))
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

#[test]
fn covering_radius_dominates_dense_samples() {
    let h = 0.02;
    for (name, poly) in shapes::catalog() {
        let e = GeodesicEngine::new(poly);
        for k in 1..=4 {
            let p = gonzalez_placement(&e, k).unwrap();
            let (q, m) = dense_max(&e, &p.centers, h);
            assert!(m <= p.covering_radius + 1e-9, "{name} k={k}: sample {q} at {m} > {}", p.covering_radius);
            assert!(m >= p.covering_radius - h, "{name} k={k}: {m} vs {}", p.covering_radius);
        }
    }
}

#[test]
fn l_polygon_two_centers_has_tie_candidate_near_grid_argmax() {
    let e = GeodesicEngine::new(shapes::l_polygon());
    let centers = [pt(2., 0.5), pt(0.5, 2.)];
    let set = candidate_set(&e, &centers).unwrap();
    let h = 0.02;
    let (q, _) = dense_max(&e, &centers, h);
    let near = set.iter().any(|c| c.dist(q) <= h * 2f64.sqrt());
    assert!(near, "grid argmax {q} far from candidates {set:?}");
}

#[test]
fn certificate_and_trace_on_catalog() {
    for (name, poly) in shapes::catalog() {
        let e = GeodesicEngine::new(poly);
        for k in 1..=6 {
            let p = gonzalez_placement(&e, k).unwrap();
            assert!(p.certificate_holds(1e-9), "{name} k={k}: {p:?}");
            assert!(p.radii_trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
            assert_eq!(p.radii_trace.last().copied(), Some(p.covering_radius));
        }
    }
}

#[test]
fn k1_radius_is_vertex_zero_eccentricity() {
    for (_, poly) in shapes::catalog() {
        let e = GeodesicEngine::new(poly);
        let v0 = e.polygon().vertex(0);
        assert_eq!(k_cover(&e, 1).unwrap().radius, covering_radius(&e, &[v0]).unwrap());
    }
}

#[test]
fn convex_k1_radius_at_least_half_diameter() {
    let e = GeodesicEngine::new(shapes::convex_pentagon());
    let vs = e.polygon().vertices();
    let diam = vs.iter().flat_map(|a| vs.iter().map(move |b| a.dist(*b))).fold(0.0, f64::max);
    assert!(k_cover(&e, 1).unwrap().radius >= diam / 2.0 - 1e-12);
}

#[test]
fn radius_shrinks_with_k() {
    let e = GeodesicEngine::new(shapes::comb(4));
    let radii: Vec<f64> = (1..=6).map(|k| k_cover(&e, k).unwrap().radius).collect();
    assert!(radii.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{radii:?}");
}

#[test]
fn packings_are_valid_and_bounded_by_cover() {
    for (name, poly) in shapes::catalog() {
        let e = GeodesicEngine::new(poly);
        for k in 2..=5 {
            let pack = k_pack(&e, k).unwrap();
            assert!(verify_packing(&e, &pack.centers, pack.radius).unwrap(), "{name} k={k}");
            let cover = k_cover(&e, k).unwrap();
            assert!(pack.radius <= 2.0 * cover.radius + 1e-9);
        }
    }
}

#[test]
fn square_k4_within_twice_quadrant_optimum() {
    let e = GeodesicEngine::new(shapes::unit_square());
    let quadrants = [pt(0.25, 0.25), pt(0.75, 0.25), pt(0.25, 0.75), pt(0.75, 0.75)];
    let opt = covering_radius(&e, &quadrants).unwrap();
    assert!((opt - 0.125f64.sqrt()).abs() < 1e-12);
    assert!(k_cover(&e, 4).unwrap().radius <= 2.0 * opt + 1e-9);
}
