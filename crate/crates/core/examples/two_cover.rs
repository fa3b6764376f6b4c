//! Two-disk cover: a decision at fixed radius and the minimal radius.

use geodisk::two_cover::{default_eps, min_two_cover, test_two_disk_cover, verify_two_cover};
use geodisk::{shapes, GeodesicEngine};

fn main() -> geodisk::Result<()> {
    let engine = GeodesicEngine::new(shapes::rectangle(2.0, 1.0));
    for r in [0.70, 0.72] {
        match test_two_disk_cover(&engine, r)? {
            Some(w) => println!("r={r}: cover at {:?} and {:?}", w.c1, w.c2),
            None => println!("r={r}: no two-disk cover"),
        }
    }

    let best = min_two_cover(&engine, default_eps(&engine)?)?;
    let w = &best.witness;
    println!("minimal radius in [{:.7}, {:.7}]", best.lower, w.r);
    println!("witness verified: {}", verify_two_cover(&engine, w.c1, w.c2, w.r)?);

    let l = GeodesicEngine::new(shapes::l_polygon());
    let best = min_two_cover(&l, 1e-4)?;
    println!("L-shape: r={:.5}", best.witness.r);
    Ok(())
}
