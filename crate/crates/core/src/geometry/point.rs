use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Absolute tolerance for incidence and visibility predicates.
///
/// Coordinates are assumed to be of order 1 to 10³.
pub const EPS_GEOM: f64 = 1e-9;

/// A point (or vector) in the plane.
///
/// Serializes as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn lerp(self, o: Self, t: f64) -> Self {
        Self::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    #[inline]
    pub fn midpoint(self, o: Self) -> Self {
        self.lerp(o, 0.5)
    }

    /// Unit vector in the same direction; zero stays zero.
    pub fn normalized(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }

    /// Counterclockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn from_polar(center: Self, radius: f64, angle: f64) -> Self {
        Self::new(center.x + radius * angle.cos(), center.y + radius * angle.sin())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on `(x, y)`, used for every deterministic tie-break.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }

    pub fn approx_eq(self, o: Self, tol: f64) -> bool {
        self.dist(o) <= tol
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl From<(f64, f64)> for Point2 {
    fn from(t: (f64, f64)) -> Self {
        Self::new(t.0, t.1)
    }
}

impl Add for Point2 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of triangle `abc`; positive when counterclockwise.
#[inline]
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Distance from `p` to segment `ab` and the clamped parameter of the closest point.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (p.dist(a), 0.0);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (p.dist(a.lerp(b, t)), t)
}

/// Signed distance of `p` from the directed line through `a` and `b` (left is positive).
#[inline]
pub fn signed_line_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let n = ab.norm();
    if n == 0.0 {
        return p.dist(a);
    }
    ab.cross(p - a) / n
}

/// True when the interiors of segments `ab` and `cd` cross transversally.
pub fn segments_cross_properly(a: Point2, b: Point2, c: Point2, d: Point2, eps: f64) -> bool {
    let d1 = signed_line_distance(a, c, d);
    let d2 = signed_line_distance(b, c, d);
    if !((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) {
        return false;
    }
    let d3 = signed_line_distance(c, a, b);
    let d4 = signed_line_distance(d, a, b);
    (d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)
}

/// Closed segments `ab` and `cd` share a point (within `eps`).
pub fn segments_touch(a: Point2, b: Point2, c: Point2, d: Point2, eps: f64) -> bool {
    if segments_cross_properly(a, b, c, d, 0.0) {
        return true;
    }
    point_segment_distance(a, c, d).0 <= eps
        || point_segment_distance(b, c, d).0 <= eps
        || point_segment_distance(c, a, b).0 <= eps
        || point_segment_distance(d, a, b).0 <= eps
}

/// Normalizes an angle into `[0, 2π)`.
#[inline]
pub fn normalize_angle(a: f64) -> f64 {
    let t = a.rem_euclid(std::f64::consts::TAU);
    if t >= std::f64::consts::TAU {
        0.0
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_crossing_ignores_touching() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(2.0, 0.0);
        assert!(segments_cross_properly(
            a,
            b,
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            EPS_GEOM
        ));
        assert!(!segments_cross_properly(
            a,
            b,
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            EPS_GEOM
        ));
        assert!(segments_touch(
            a,
            b,
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            EPS_GEOM
        ));
    }

    #[test]
    fn lexicographic_order() {
        let p = Point2::new(0.0, 1.0);
        let q = Point2::new(1.0, 0.0);
        assert_eq!(p.lex_cmp(&q), Ordering::Less);
        assert_eq!(q.lex_cmp(&Point2::new(1.0, -1.0)), Ordering::Greater);
    }

    #[test]
    fn angle_normalization() {
        assert!((normalize_angle(-std::f64::consts::FRAC_PI_2) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(normalize_angle(0.0), 0.0);
    }
}
