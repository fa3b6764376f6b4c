//! Polygon documents: `{"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Polygon, PolygonRings};

fn input_error(field: &str, reason: impl ToString) -> Error {
    Error::Input {
        field: field.to_string(),
        reason: reason.to_string(),
    }
}

/// Parses a polygon document and validates the rings.
pub fn parse_polygon(text: &str) -> Result<Polygon> {
    let rings: PolygonRings = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let field = if msg.contains("outer") {
            "outer"
        } else if msg.contains("holes") {
            "holes"
        } else {
            "polygon"
        };
        input_error(field, msg)
    })?;
    Polygon::from_rings(&rings).map_err(|e| {
        let field = match &e {
            crate::error::PolygonError::SelfIntersection { ring }
            | crate::error::PolygonError::HoleOutsideOuter { ring }
            | crate::error::PolygonError::HolesOverlap { ring, .. }
            | crate::error::PolygonError::DegenerateRing { ring, .. } => ring_field(*ring),
        };
        input_error(&field, e)
    })
}

fn ring_field(ring: usize) -> String {
    if ring == 0 {
        "outer".to_string()
    } else {
        format!("holes[{}]", ring - 1)
    }
}

pub fn load_polygon(path: &Path) -> Result<(Polygon, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| input_error("polygon file", format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| input_error("polygon file", e))?;
    Ok((parse_polygon(text)?, bytes))
}

/// Serializes the rings of `poly` in document form.
pub fn polygon_to_json(poly: &Polygon) -> String {
    serde_json::to_string_pretty(&poly.rings()).expect("rings serialize")
}

pub fn save_polygon(poly: &Polygon, path: &Path) -> Result<()> {
    std::fs::write(path, polygon_to_json(poly) + "\n")
        .map_err(|e| input_error("output file", format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn round_trip() {
        let p = shapes::square_with_hole();
        let q = parse_polygon(&polygon_to_json(&p)).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse_polygon(r#"{"holes": []}"#).unwrap_err();
        assert!(matches!(e, Error::Input { ref field, .. } if field == "outer"), "{e}");
        let bow = r#"{"outer": [[0,0],[1,1],[1,0],[0,1]]}"#;
        assert!(matches!(parse_polygon(bow), Err(Error::Input { ref field, .. }) if field == "outer"));
        let bad_hole = r#"{"outer": [[0,0],[4,0],[4,4],[0,4]], "holes": [[[5,5],[6,5],[6,6]]]}"#;
        assert!(matches!(parse_polygon(bad_hole), Err(Error::Input { ref field, .. }) if field == "holes[0]"));
    }
}
