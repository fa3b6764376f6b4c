//! Reading a polygon from JSON and writing a run record.

use geodisk::covering::k_cover;
use geodisk::io::{parse_polygon, polygon_to_json, sha256_hex, CommandInfo, CommandOutput, InputInfo, RunRecord};
use geodisk::GeodesicEngine;

const ROOM: &str = r#"{"outer": [[0,0],[4,0],[4,4],[0,4]], "holes": [[[1.5,1.5],[1.5,2.5],[2.5,2.5],[2.5,1.5]]]}"#;

fn main() -> geodisk::Result<()> {
    let poly = parse_polygon(ROOM)?;
    println!("{} vertices in {} rings", poly.n(), poly.ring_count());
    println!("{}", polygon_to_json(&poly));

    let engine = GeodesicEngine::new(poly);
    let cover = k_cover(&engine, 2)?;
    let record = RunRecord {
        command: CommandInfo {
            name: "cover-k".into(),
            params: [("k".to_string(), 2.into())].into_iter().collect(),
        },
        input: InputInfo {
            path: "room.json".into(),
            sha256: sha256_hex(ROOM.as_bytes()),
        },
        output: CommandOutput::KCover {
            centers: cover.centers,
            radius: cover.radius,
            certificate_delta: cover.placement.certificate_delta,
            radii_trace: cover.placement.radii_trace,
            saturated: cover.placement.saturated,
        },
        timings: None,
    };
    println!("{}", record.to_json());
    Ok(())
}
