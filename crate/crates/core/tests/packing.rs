use geodisk::geometry::GeodesicEngine;
use geodisk::packing::{brute_force_max_packing, greedy_packing, greedy_unit_packing, verify_packing};
use geodisk::shapes;

#[test]
fn long_rectangle_oracle_is_six() {
    let e = GeodesicEngine::new(shapes::rectangle(10.0, 1.0));
    assert_eq!(brute_force_max_packing(&e, 1.0, 0.25).unwrap(), 6);
    let greedy = greedy_unit_packing(&e).unwrap();
    assert!(6 <= 2 * greedy.len());
}

#[test]
fn unit_square_oracles() {
    let e = GeodesicEngine::new(shapes::unit_square());
    assert_eq!(brute_force_max_packing(&e, 1.0, 0.25).unwrap(), 1);
    assert_eq!(brute_force_max_packing(&e, 0.25, 0.5).unwrap(), 9);
    let greedy = greedy_packing(&e, 0.25).unwrap();
    assert!(9 <= 2 * greedy.len(), "greedy {}", greedy.len());
}

#[test]
fn small_radius_in_square() {
    let e = GeodesicEngine::new(shapes::unit_square());
    let res = greedy_packing(&e, 0.2).unwrap();
    assert!(verify_packing(&e, &res.centers, 0.2).unwrap());
    let opt = brute_force_max_packing(&e, 0.2, 0.1).unwrap();
    assert!(opt <= 2 * res.len(), "opt {opt} greedy {}", res.len());
}

#[test]
fn huge_radius_gives_one_center() {
    let e = GeodesicEngine::new(shapes::l_polygon());
    assert_eq!(greedy_packing(&e, 1.5).unwrap().len(), 1);
}

#[test]
fn similarity_invariance() {
    let p = shapes::l_polygon();
    let a = greedy_packing(&GeodesicEngine::new(p.clone()), 0.3).unwrap();
    let b = greedy_packing(&GeodesicEngine::new(p.scaled(3.0)), 0.9).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.centers.iter().zip(&b.centers) {
        assert!((*x * 3.0).approx_eq(*y, 1e-9), "{x} vs {y}");
    }
}

#[test]
fn every_candidate_ends_inside_a_placement_disk() {
    let e = GeodesicEngine::new(shapes::comb(4));
    let r = 0.5;
    let res = greedy_packing(&e, r).unwrap();
    for &q in &res.candidates_seen {
        let covered = res
            .centers
            .iter()
            .any(|&c| e.distance(c, q).unwrap() <= 2.0 * r + 1e-9);
        assert!(covered, "{q}");
    }
    for (k, &c) in res.centers.iter().enumerate() {
        for &prev in &res.centers[..k] {
            assert!(e.distance(prev, c).unwrap() >= 2.0 * r - 1e-9);
        }
    }
}
