//! Circle intersection primitives.

use super::point::Point2;

/// Intersection parameters `t ∈ [0, 1]` of segment `ab` with a circle.
/// The flag marks a tangential touch.
pub fn circle_segment(center: Point2, radius: f64, a: Point2, b: Point2, tol: f64) -> Vec<(f64, bool)> {
    let d = b - a;
    let f = a - center;
    let qa = d.norm_sq();
    if qa == 0.0 {
        return Vec::new();
    }
    let qb = 2.0 * d.dot(f);
    let qc = f.norm_sq() - radius * radius;
    let disc = qb * qb - 4.0 * qa * qc;
    // tangency: closest approach of the line within `tol` of the circle
    let closest = (f - d * (f.dot(d) / qa)).norm();
    let len = qa.sqrt();
    let ttol = tol / len;
    let accept = |t: f64| (-ttol..=1.0 + ttol).contains(&t);
    if (closest - radius).abs() <= tol || disc <= 0.0 {
        if (closest - radius).abs() > tol {
            return Vec::new();
        }
        let t = -qb / (2.0 * qa);
        return if accept(t) { vec![(t.clamp(0.0, 1.0), true)] } else { Vec::new() };
    }
    let sq = disc.sqrt();
    // numerically stable roots
    let q = -0.5 * (qb + qb.signum() * sq);
    let (mut t1, mut t2) = if q == 0.0 {
        let r = sq / (2.0 * qa);
        (-r, r)
    } else {
        (q / qa, qc / q)
    };
    if t1 > t2 {
        std::mem::swap(&mut t1, &mut t2);
    }
    [t1, t2]
        .into_iter()
        .filter(|&t| accept(t))
        .map(|t| (t.clamp(0.0, 1.0), false))
        .collect()
}

/// Intersection points of two circles with a tangency flag.
pub fn circle_circle(c1: Point2, r1: f64, c2: Point2, r2: f64, tol: f64) -> Vec<(Point2, bool)> {
    let v = c2 - c1;
    let d = v.norm();
    if d <= tol {
        return Vec::new();
    }
    if d > r1 + r2 + tol || d < (r1 - r2).abs() - tol {
        return Vec::new();
    }
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - a * a;
    let u = v * (1.0 / d);
    let base = c1 + u * a;
    let tangent = (d - (r1 + r2)).abs() <= tol || (d - (r1 - r2).abs()).abs() <= tol;
    if tangent || h2 <= 0.0 {
        return vec![(base, true)];
    }
    let h = h2.sqrt();
    let off = u.perp() * h;
    vec![(base + off, false), (base - off, false)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circles_meet_at_sixty_degrees() {
        let pts = circle_circle(Point2::new(0., 0.), 1.0, Point2::new(1., 0.), 1.0, 1e-12);
        assert_eq!(pts.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(pts[0].0.approx_eq(Point2::new(0.5, h), 1e-15));
        assert!(pts[1].0.approx_eq(Point2::new(0.5, -h), 1e-15));
    }

    #[test]
    fn tangent_circles() {
        let pts = circle_circle(Point2::new(0., 0.), 0.5, Point2::new(1., 0.), 0.5, 1e-12);
        assert_eq!(pts, vec![(Point2::new(0.5, 0.0), true)]);
    }

    #[test]
    fn segment_hits() {
        let ts = circle_segment(Point2::new(0.5, 0.5), 0.6, Point2::new(0., 0.), Point2::new(1., 0.), 1e-12);
        let dx = (0.36f64 - 0.25).sqrt();
        assert_eq!(ts.len(), 2);
        assert!((ts[0].0 - (0.5 - dx)).abs() < 1e-15);
        assert!((ts[1].0 - (0.5 + dx)).abs() < 1e-15);
        let tangent = circle_segment(Point2::new(0.5, 0.5), 0.5, Point2::new(0., 0.), Point2::new(1., 0.), 1e-12);
        assert_eq!(tangent, vec![(0.5, true)]);
    }
}
