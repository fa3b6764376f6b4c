//! Small test polygons used throughout the examples and test suites.

use crate::geometry::{Point2, Polygon};

fn from(coords: &[(f64, f64)]) -> Polygon {
    Polygon::from_coords(coords).expect("built-in shape is valid")
}

pub fn unit_square() -> Polygon {
    rectangle(1.0, 1.0)
}

/// `[0, w] × [0, h]`.
pub fn rectangle(w: f64, h: f64) -> Polygon {
    from(&[(0.0, 0.0), (w, 0.0), (w, h), (0.0, h)])
}

/// L shape with a single reflex vertex at `(1, 1)`.
pub fn l_polygon() -> Polygon {
    from(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)])
}

pub fn convex_pentagon() -> Polygon {
    regular_polygon(5, 1.0)
}

/// Regular `n`-gon of circumradius `r` centered at the origin, first vertex on the x-axis.
pub fn regular_polygon(n: usize, r: f64) -> Polygon {
    let coords: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            (r * a.cos(), r * a.sin())
        })
        .collect();
    from(&coords)
}

/// Corridor winding inward through three reflex turns.
pub fn spiral() -> Polygon {
    from(&[
        (0., 0.), (4., 0.), (4., 4.), (0., 4.), (0., 2.),
        (1., 2.), (1., 3.), (3., 3.), (3., 1.), (0., 1.),
    ])
}

/// Comb with `teeth` unit-wide teeth of height 2 on a base of height 1.
pub fn comb(teeth: usize) -> Polygon {
    let width = (2 * teeth - 1) as f64;
    let mut coords = vec![(0.0, 0.0), (width, 0.0)];
    for t in (0..teeth).rev() {
        let right = (2 * t + 1) as f64;
        let left = (2 * t) as f64;
        coords.push((right, 3.0));
        coords.push((left, 3.0));
        if t > 0 {
            coords.push((left, 1.0));
            coords.push((left - 1.0, 1.0));
        }
    }
    from(&coords)
}

/// `[0, 4]²` with the square hole `[1.5, 2.5]²`.
pub fn square_with_hole() -> Polygon {
    let outer = vec![
        Point2::new(0., 0.),
        Point2::new(4., 0.),
        Point2::new(4., 4.),
        Point2::new(0., 4.),
    ];
    let hole = vec![
        Point2::new(1.5, 1.5),
        Point2::new(2.5, 1.5),
        Point2::new(2.5, 2.5),
        Point2::new(1.5, 2.5),
    ];
    Polygon::new(outer, vec![hole]).expect("built-in shape is valid")
}

/// The named shapes used by the acceptance suite, paired with their names.
pub fn catalog() -> Vec<(&'static str, Polygon)> {
    vec![
        ("convex_pentagon", convex_pentagon()),
        ("l_polygon", l_polygon()),
        ("spiral", spiral()),
        ("comb4", comb(4)),
        ("square_with_hole", square_with_hole()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comb_matches_listed_coordinates() {
        let c = comb(4);
        let want = [
            (0., 0.), (7., 0.), (7., 3.), (6., 3.), (6., 1.), (5., 1.), (5., 3.), (4., 3.),
            (4., 1.), (3., 1.), (3., 3.), (2., 3.), (2., 1.), (1., 1.), (1., 3.), (0., 3.),
        ];
        let got: Vec<(f64, f64)> = c.vertices().iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(got, want);
        assert_eq!(c.reflex_vertices().len(), 6);
    }

    #[test]
    fn spiral_has_three_reflex_turns() {
        assert_eq!(spiral().reflex_vertices().len(), 3);
    }

    #[test]
    fn catalog_shapes_are_valid() {
        for (name, p) in catalog() {
            assert!(p.area() > 0.0, "{name}");
        }
    }
}
