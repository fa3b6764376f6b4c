//! Spreading k equal disks as far apart as possible.

use geodisk::covering::{k_cover, k_pack};
use geodisk::oracle::brute_force_k_packing_radius;
use geodisk::{shapes, GeodesicEngine};

fn main() -> geodisk::Result<()> {
    let engine = GeodesicEngine::new(shapes::spiral());
    for k in 2..=4 {
        let pack = k_pack(&engine, k)?;
        let cover = k_cover(&engine, k)?;
        println!("k={k} pack r={:.5} cover s={:.5}", pack.radius, cover.radius);
    }
    let best = brute_force_k_packing_radius(&engine, 2, 0.25)?;
    println!("lattice optimum for k=2: {best:.5}");
    Ok(())
}
