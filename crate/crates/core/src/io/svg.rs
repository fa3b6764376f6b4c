//! SVG pictures of polygons with disks, centers, paths and arcs.
//!
//! Only `path`, `circle`, `line` and `rect` elements are emitted, with
//! coordinates at fixed precision, so equal inputs give equal bytes.

use std::fmt::Write;

use crate::disk::{DiskBoundary, Piece};
use crate::geometry::{Point2, Polygon};

/// Segments per full turn when arcs are drawn as polylines.
pub const ARC_SEGMENTS: usize = 256;

const SHADES: [&str; 8] = [
    "#7f7f7f", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
];

#[derive(Debug, Clone, Default)]
pub struct Overlays {
    pub disks: Vec<DiskBoundary>,
    pub centers: Vec<Point2>,
    pub paths: Vec<Vec<Point2>>,
    /// Loose boundary pieces, e.g. arcs of a circle arrangement.
    pub pieces: Vec<Piece>,
    /// Extra marked points, e.g. candidate sets.
    pub markers: Vec<Point2>,
}

struct Frame {
    flip: f64,
    stroke: f64,
}

impl Frame {
    fn x(&self, v: f64) -> String {
        num(v)
    }

    fn y(&self, v: f64) -> String {
        num(self.flip - v)
    }

    fn pt(&self, p: Point2) -> String {
        format!("{} {}", self.x(p.x), self.y(p.y))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

fn ring_path(frame: &Frame, pts: &[Point2]) -> String {
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(d, "{}{}", if i == 0 { "M" } else { " L" }, frame.pt(*p));
    }
    d.push_str(" Z");
    d
}

fn loop_points(pieces: &[Piece]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = Vec::new();
    for piece in pieces {
        for p in piece.tessellate(ARC_SEGMENTS) {
            if pts.last().is_none_or(|q| q.dist(p) > 1e-12) {
                pts.push(p);
            }
        }
    }
    pts
}

pub fn render_svg(poly: &Polygon, overlays: &Overlays) -> String {
    let (lo, hi) = poly.bbox();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let (mx, my) = (0.05 * w.max(h * 1e-3), 0.05 * h.max(w * 1e-3));
    let frame = Frame {
        flip: lo.y + hi.y,
        stroke: 0.004 * w.hypot(h),
    };
    let (vx, vy, vw, vh) = (lo.x - mx, lo.y - my, w + 2.0 * mx, h + 2.0 * my);
    let px_w = 640.0;
    let px_h = (px_w * vh / vw).round();

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        px_w,
        px_h,
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#ffffff"/>"##,
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let sw = num(frame.stroke);
    for r in 0..poly.ring_count() {
        let fill = if r == 0 { "#d9d9d9" } else { "#ffffff" };
        let _ = writeln!(
            s,
            r##"<path d="{}" fill="{fill}" stroke="#000000" stroke-width="{sw}"/>"##,
            ring_path(&frame, poly.ring(r))
        );
    }
    for (i, disk) in overlays.disks.iter().enumerate() {
        let shade = SHADES[i % SHADES.len()];
        let mut d = String::new();
        for l in disk.loops(1e-7 * disk.radius.max(1.0)) {
            let pts = loop_points(&l);
            if pts.len() >= 2 {
                if !d.is_empty() {
                    d.push(' ');
                }
                d.push_str(&ring_path(&frame, &pts));
            }
        }
        let _ = writeln!(
            s,
            r#"<path d="{d}" fill="{shade}" fill-opacity="0.35" fill-rule="evenodd" stroke="{shade}" stroke-width="{sw}"/>"#
        );
    }
    for piece in &overlays.pieces {
        let pts = piece.tessellate(ARC_SEGMENTS);
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{}", if i == 0 { "M" } else { " L" }, frame.pt(*p));
        }
        let _ = writeln!(s, r##"<path d="{d}" fill="none" stroke="#1f3f7f" stroke-width="{sw}"/>"##);
    }
    for path in &overlays.paths {
        for w in path.windows(2) {
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#b03060" stroke-width="{}"/>"##,
                frame.x(w[0].x),
                frame.y(w[0].y),
                frame.x(w[1].x),
                frame.y(w[1].y),
                num(1.5 * frame.stroke)
            );
        }
    }
    let dot = num(2.5 * frame.stroke);
    for p in &overlays.markers {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{dot}" fill="none" stroke="#505050" stroke-width="{}"/>"##,
            frame.x(p.x),
            frame.y(p.y),
            num(0.5 * frame.stroke)
        );
    }
    for p in &overlays.centers {
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{dot}" fill="#000000"/>"##,
            frame.x(p.x),
            frame.y(p.y)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::disk_boundary;
    use crate::geometry::GeodesicEngine;
    use crate::shapes;

    #[test]
    fn one_path_per_ring() {
        let svg = render_svg(&shapes::square_with_hole(), &Overlays::default());
        assert_eq!(svg.matches("<path").count(), 2);
        for tag in ["<g", "<polygon", "<polyline", "<text"] {
            assert!(!svg.contains(tag));
        }
    }

    #[test]
    fn disk_is_tessellated() {
        let e = GeodesicEngine::new(shapes::rectangle(4.0, 4.0));
        let disk = disk_boundary(&e, Point2::new(2.0, 2.0), 1.0).unwrap();
        let svg = render_svg(
            e.polygon(),
            &Overlays {
                disks: vec![disk],
                ..Default::default()
            },
        );
        let disk_path = svg.lines().find(|l| l.contains("fill-opacity")).unwrap();
        assert_eq!(disk_path.matches(" L").count(), ARC_SEGMENTS);
        assert!(disk_path.contains(SHADES[0]));
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(-1.5), "-1.500000");
    }
}
