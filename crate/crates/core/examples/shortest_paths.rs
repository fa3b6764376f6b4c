//! Geodesic distances and shortest paths in an L-shaped room.

use geodisk::oracle::grid_distance;
use geodisk::{shapes, GeodesicEngine, Point2};

fn main() -> geodisk::Result<()> {
    let engine = GeodesicEngine::new(shapes::l_polygon());
    let a = Point2::new(0.25, 1.75);
    let b = Point2::new(1.9, 0.6);

    let path = engine.shortest_path(a, b)?;
    println!("length {:.6}", path.length);
    for p in &path.waypoints {
        println!("  ({:.4}, {:.4})", p.x, p.y);
    }
    println!("euclidean {:.6}", a.dist(b));

    // A lattice approximation from above, independent of the visibility graph.
    for step in [0.1, 0.05, 0.025] {
        let g = grid_distance(engine.polygon(), step, a, b)?;
        println!("grid h={step}: {g:.6}");
    }
    Ok(())
}
