//! Draws a 3-cover of an L-shape and one shortest path as SVG.

use geodisk::covering::k_cover;
use geodisk::disk::disk_boundary;
use geodisk::io::{render_svg, Overlays};
use geodisk::{shapes, GeodesicEngine, Point2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = GeodesicEngine::new(shapes::l_polygon());
    let cover = k_cover(&engine, 3)?;
    let mut overlays = Overlays::default();
    for &c in &cover.centers {
        overlays.disks.push(disk_boundary(&engine, c, cover.radius)?);
    }
    overlays.centers = cover.centers.clone();
    let path = engine.shortest_path(Point2::new(0.1, 1.9), Point2::new(1.9, 0.1))?;
    overlays.paths.push(path.waypoints);

    let svg = render_svg(engine.polygon(), &overlays);
    let out = std::env::temp_dir().join("k_cover.svg");
    std::fs::write(&out, &svg)?;
    println!("wrote {} ({} bytes)", out.display(), svg.len());
    Ok(())
}
