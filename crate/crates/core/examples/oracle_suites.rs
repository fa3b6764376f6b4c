//! Runs the randomized property suites, then again on a tampered metric.

use geodisk::oracle::{property_suites, Suite};
use geodisk::{shapes, GeodesicEngine};

fn main() -> geodisk::Result<()> {
    let engine = GeodesicEngine::new(shapes::l_polygon());
    let report = property_suites(&engine, 100, 7, Suite::All);
    for line in report.lines() {
        println!("{line}");
    }

    // Stretch one visibility edge by 10%; the triangle check notices.
    let bad = engine.with_edge_weight_factor(0, 1, 1.1)?;
    let report = property_suites(&bad, 100, 7, Suite::Metric);
    println!("tampered metric passes: {}", report.passed());
    Ok(())
}
