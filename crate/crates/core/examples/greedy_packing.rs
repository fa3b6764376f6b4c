//! Greedy packing of disks in a long corridor, checked against a lattice oracle.

use geodisk::oracle::brute_force_max_packing;
use geodisk::packing::{greedy_packing, verify_packing};
use geodisk::{shapes, GeodesicEngine};

fn main() -> geodisk::Result<()> {
    let engine = GeodesicEngine::new(shapes::rectangle(10.0, 1.0));
    let r = 1.0;
    let res = greedy_packing(&engine, r)?;
    println!("greedy K={}", res.len());
    for c in &res.centers {
        println!("  center ({:.3}, {:.3})", c.x, c.y);
    }
    println!("valid: {}", verify_packing(&engine, &res.centers, r)?);

    let opt = brute_force_max_packing(&engine, r, 0.25)?;
    println!("lattice optimum {opt}, bound 2K = {}", 2 * res.len());
    Ok(())
}
