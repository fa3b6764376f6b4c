//! Boundary of a union of geodesic disks, kept as an unordered set of pieces.

use serde::{Deserialize, Serialize};

use super::{pieces_intersections, push_unique, residual_tol, DiskBoundary, GeodesicDisk, Piece};
use crate::geometry::point::point_segment_distance;
use crate::geometry::{GeodesicEngine, Point2, PointProfile, ShortestPathTree};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ArrangementBoundary {
    /// `(disk index, piece)`; arcs are oriented with the union on their left.
    pub pieces: Vec<(usize, Piece)>,
    pub disks: Vec<GeodesicDisk>,
    #[serde(skip)]
    trees: Vec<ShortestPathTree>,
}

impl ArrangementBoundary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// True when `q` is strictly inside some placed disk.
    pub fn in_interior(&self, engine: &GeodesicEngine, q: &PointProfile) -> bool {
        self.disks
            .iter()
            .zip(&self.trees)
            .any(|(d, t)| t.distance_to(engine, q) < d.radius - residual_tol(d.radius))
    }

    /// Closed membership in the union.
    pub fn covers(&self, engine: &GeodesicEngine, q: &PointProfile) -> bool {
        self.disks
            .iter()
            .zip(&self.trees)
            .any(|(d, t)| t.distance_to(engine, q) <= d.radius + engine.eps())
    }

    /// Area of the union from Green's theorem over the pieces.
    pub fn area(&self) -> f64 {
        self.pieces.iter().map(|(_, p)| p.green_area()).sum()
    }
}

fn on_segment_piece(pieces: &[(usize, Piece)], edge: usize, q: Point2, tol: f64) -> bool {
    pieces.iter().any(|(_, p)| match p {
        Piece::Segment(s) => s.edge == edge && point_segment_distance(q, s.a, s.b).0 <= tol,
        Piece::Arc(_) => false,
    })
}

/// Adds one disk boundary to the arrangement.
///
/// Returns the new arrangement together with the points where the new
/// boundary meets the old one, plus the points where its arcs reach a part
/// of the polygon boundary not yet inside the union.
pub fn update_arrangement(
    engine: &GeodesicEngine,
    arr: &ArrangementBoundary,
    disk: &DiskBoundary,
) -> (ArrangementBoundary, Vec<Point2>) {
    let tree = engine.tree_from_profile(&engine.profile_unchecked(disk.center));
    let r = disk.radius;
    let tol = residual_tol(r);
    let new_index = arr.disks.len();
    let new_pieces = disk.pieces();

    let mut crossings: Vec<Point2> = Vec::new();
    let mut old_cuts: Vec<Vec<Point2>> = vec![Vec::new(); arr.pieces.len()];
    let mut new_cuts: Vec<Vec<Point2>> = vec![Vec::new(); new_pieces.len()];
    for (i, (_, old)) in arr.pieces.iter().enumerate() {
        for (j, new) in new_pieces.iter().enumerate() {
            for bp in pieces_intersections(&[*old], &[*new], tol) {
                old_cuts[i].push(bp.point);
                new_cuts[j].push(bp.point);
                push_unique(&mut crossings, bp.point, 1e-7);
            }
            // overlapping boundary portions split at each other's ends
            if let (Piece::Segment(a), Piece::Segment(b)) = (old, new) {
                if a.edge == b.edge {
                    new_cuts[j].extend([a.a, a.b]);
                }
            }
        }
    }

    let dist_new = |q: Point2| tree.distance_to(engine, &engine.profile_unchecked(q));

    let mut pieces: Vec<(usize, Piece)> = Vec::new();
    for (i, (owner, old)) in arr.pieces.iter().enumerate() {
        for sub in old.split_at(&old_cuts[i], tol) {
            let keep = match sub {
                Piece::Segment(_) => true,
                Piece::Arc(_) => dist_new(sub.midpoint()) >= r - tol,
            };
            if keep {
                pieces.push((*owner, sub));
            }
        }
    }
    for (j, new) in new_pieces.iter().enumerate() {
        for sub in new.split_at(&new_cuts[j], tol) {
            let keep = match sub {
                Piece::Segment(s) => !on_segment_piece(&arr.pieces, s.edge, s.midpoint(), tol),
                Piece::Arc(_) => !arr.in_interior(engine, &engine.profile_unchecked(sub.midpoint())),
            };
            if keep {
                pieces.push((new_index, sub));
            }
        }
    }

    let mut new_points = crossings;
    for p in disk.boundary_contacts(engine.polygon(), 1e-9) {
        if !arr.in_interior(engine, &engine.profile_unchecked(p)) {
            push_unique(&mut new_points, p, 1e-7);
        }
    }

    let mut disks = arr.disks.clone();
    disks.push(disk.disk());
    let mut trees = arr.trees.clone();
    trees.push(tree);
    (ArrangementBoundary { pieces, disks, trees }, new_points)
}
