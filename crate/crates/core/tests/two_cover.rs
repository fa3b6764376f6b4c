use geodisk::oracle::brute_force_two_cover;
use geodisk::shapes;
use geodisk::two_cover::{
    min_two_cover, search_two_disk_cover, test_two_disk_cover, uncovered_edges, verify_two_cover,
};
use geodisk::disk::GeodesicDisk;
use geodisk::{GeodesicEngine, Point2};

fn simple_shapes() -> Vec<(&'static str, GeodesicEngine)> {
    shapes::catalog()
        .into_iter()
        .filter(|(_, p)| !p.has_holes())
        .map(|(name, p)| (name, GeodesicEngine::new(p)))
        .collect()
}

#[test]
fn rectangle_optimum_is_half_diagonal_of_a_unit_square() {
    let e = GeodesicEngine::new(shapes::rectangle(2.0, 1.0));
    let best = min_two_cover(&e, 1e-6).unwrap();
    let exact = 0.5f64.sqrt();
    assert!(best.lower <= exact + 1e-9 && exact <= best.witness.r + 1e-9);
    assert!(best.witness.r - exact < 1e-5);
    assert!(verify_two_cover(&e, best.witness.c1, best.witness.c2, best.witness.r).unwrap());
}

#[test]
fn decisions_are_monotone_on_a_ladder() {
    for (name, e) in simple_shapes() {
        let best = min_two_cover(&e, 1e-4).unwrap();
        let r = best.witness.r;
        let mut seen_yes = false;
        for i in 0..20 {
            let radius = r * (0.8 + 0.02 * i as f64);
            let search = search_two_disk_cover(&e, radius).unwrap();
            assert!(search.stats.max_uncovered_edges <= 2, "{name}");
            match search.witness {
                Some(w) => {
                    seen_yes = true;
                    assert!(w.covered_check.passed(), "{name} at {radius}");
                }
                None => assert!(!seen_yes, "{name}: infeasible at {radius} after a feasible radius"),
            }
        }
        assert!(seen_yes, "{name}");
    }
}

#[test]
fn optimum_matches_brute_force_pairs() {
    let step = 0.1;
    for (name, e) in simple_shapes() {
        let bbox = e.polygon().bbox_diagonal();
        if bbox > 6.0 {
            continue;
        }
        let best = min_two_cover(&e, 1e-5).unwrap();
        let brute = brute_force_two_cover(&e, step).unwrap();
        // grid centers lie within step/√2 of the optimal ones
        assert!(best.witness.r <= brute.radius + step, "{name}: {} vs {}", best.witness.r, brute.radius);
        assert!(brute.radius <= best.witness.r + step, "{name}: {} vs {}", best.witness.r, brute.radius);
    }
}

#[test]
fn radius_below_the_lower_bound_is_rejected() {
    for (name, e) in simple_shapes() {
        let best = min_two_cover(&e, 1e-4).unwrap();
        assert!(test_two_disk_cover(&e, 0.9 * best.lower).unwrap().is_none(), "{name}");
    }
}

#[test]
fn side_disks_leave_two_edges_open() {
    let e = GeodesicEngine::new(shapes::unit_square());
    let left = GeodesicDisk::new(Point2::new(0.05, 0.5), 0.55);
    let right = GeodesicDisk::new(Point2::new(0.95, 0.5), 0.55);
    let open = uncovered_edges(&e, &left, &right).unwrap();
    assert_eq!(open.len(), 2);
    for u in &open {
        let edge = e.polygon().edge(u.edge);
        // the horizontal edges, open in their middle
        assert!((edge.a.y - edge.b.y).abs() < 1e-12);
        let reach = 0.55f64.powi(2) - 0.25;
        let expect = 0.05 + reach.sqrt();
        assert!((u.reach_from.min(u.reach_to) - expect).abs() < 1e-6, "{u:?}");
    }
    let far = GeodesicDisk::new(Point2::new(0.5, 0.5), 0.1);
    let near = GeodesicDisk::new(Point2::new(0.0, 0.0), 0.1);
    assert!(uncovered_edges(&e, &far, &near).is_err());
}
