//! Exact collision tests for posed convex shapes.
//!
//! Polygon pairs use the separating-axis test; disc cases reduce to
//! closest-point distances. Touching counts as a collision, so an axis only
//! separates when there is a strict gap.

use super::{ConvexShape, Point2, Pose2};
use crate::real::Real;

/// True iff the closed posed shapes intersect (touching counts).
pub fn collide<S: Real>(
    a: &ConvexShape<S>,
    pose_a: Pose2<S>,
    b: &ConvexShape<S>,
    pose_b: Pose2<S>,
) -> bool {
    match (a, b) {
        (ConvexShape::Disc { center: ca, radius: ra }, ConvexShape::Disc { center: cb, radius: rb }) => {
            let wa = pose_a.apply(*ca);
            let wb = pose_b.apply(*cb);
            let r = *ra + *rb;
            wa.sub(wb).dot(wa.sub(wb)) <= r * r
        }
        (ConvexShape::Polygon { vertices }, ConvexShape::Disc { center, radius }) => {
            disc_polygon(pose_b.apply(*center), *radius, &world_vertices(vertices, pose_a))
        }
        (ConvexShape::Disc { center, radius }, ConvexShape::Polygon { vertices }) => {
            disc_polygon(pose_a.apply(*center), *radius, &world_vertices(vertices, pose_b))
        }
        (ConvexShape::Polygon { vertices: va }, ConvexShape::Polygon { vertices: vb }) => {
            let wa = world_vertices(va, pose_a);
            let wb = world_vertices(vb, pose_b);
            !separated_by_edges(&wa, &wb) && !separated_by_edges(&wb, &wa)
        }
    }
}

fn world_vertices<S: Real>(vertices: &[Point2<S>], pose: Pose2<S>) -> Vec<Point2<S>> {
    vertices.iter().map(|&v| pose.apply(v)).collect()
}

/// Tries every edge normal of `a` as a separating axis.
fn separated_by_edges<S: Real>(a: &[Point2<S>], b: &[Point2<S>]) -> bool {
    let n = a.len();
    for i in 0..n {
        let e = a[(i + 1) % n].sub(a[i]);
        let axis = Point2::new(-e.y, e.x);
        let (min_a, max_a) = project(a, axis);
        let (min_b, max_b) = project(b, axis);
        if max_a < min_b || max_b < min_a {
            return true;
        }
    }
    false
}

fn project<S: Real>(pts: &[Point2<S>], axis: Point2<S>) -> (S, S) {
    let mut lo = S::infinity();
    let mut hi = S::neg_infinity();
    for &p in pts {
        let d = p.dot(axis);
        if d < lo {
            lo = d;
        }
        if d > hi {
            hi = d;
        }
    }
    (lo, hi)
}

fn disc_polygon<S: Real>(center: Point2<S>, radius: S, poly: &[Point2<S>]) -> bool {
    point_polygon_dist_sq(center, poly) <= radius * radius
}

/// Squared distance from a point to a convex CCW polygon (zero inside).
pub(super) fn point_polygon_dist_sq<S: Real>(p: Point2<S>, poly: &[Point2<S>]) -> S {
    let n = poly.len();
    let inside = (0..n).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        b.sub(a).cross(p.sub(a)) >= S::zero()
    });
    if inside {
        return S::zero();
    }
    let mut best = S::infinity();
    for i in 0..n {
        let d = point_segment_dist_sq(p, poly[i], poly[(i + 1) % n]);
        if d < best {
            best = d;
        }
    }
    best
}

fn point_segment_dist_sq<S: Real>(p: Point2<S>, a: Point2<S>, b: Point2<S>) -> S {
    let ab = b.sub(a);
    let len_sq = ab.dot(ab);
    if len_sq == S::zero() {
        return p.sub(a).dot(p.sub(a));
    }
    let t = p.sub(a).dot(ab) / len_sq;
    let t = t.max(S::zero()).min(S::one());
    let proj = a.add(ab.scale(t));
    p.sub(proj).dot(p.sub(proj))
}
