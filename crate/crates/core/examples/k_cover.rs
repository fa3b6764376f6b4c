//! Farthest-point k-cover of a comb with its doubling certificate.

use geodisk::covering::{k_cover, k_cover_with, CandidateMode};
use geodisk::{shapes, GeodesicEngine};

fn main() -> geodisk::Result<()> {
    let engine = GeodesicEngine::new(shapes::comb(4));
    for k in 1..=5 {
        let cover = k_cover(&engine, k)?;
        let p = &cover.placement;
        println!(
            "k={k} radius={:.5} delta={:.5} certificate={}",
            cover.radius,
            p.certificate_delta,
            p.certificate_holds(1e-9)
        );
    }

    let approx = k_cover_with(&engine, 3, CandidateMode::Grid(0.05))?;
    println!("grid candidates, k=3: radius={:.5}", approx.radius);
    Ok(())
}
