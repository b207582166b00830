//! Largest inscribed disc of a convex polygon (Chebyshev center).
//!
//! The disc solves the linear program
//!   maximize r  subject to  n_i . c + r <= n_i . v_i
//! over the polygon's edge half-planes with unit outward normals n_i. The
//! optimum is found exactly by enumerating basic solutions (triples of active
//! constraints); when the optimum is a segment (e.g. a rectangle), the
//! optimal basic centers are averaged, which returns the symmetric center.

use super::{ConvexShape, Point2};
use crate::error::{Error, Result};
use crate::real::Real;

/// Returns the largest disc contained in the convex polygon.
pub fn inscribed_disc<S: Real>(shape: &ConvexShape<S>) -> Result<ConvexShape<S>> {
    let vertices = match shape {
        ConvexShape::Polygon { vertices } => vertices,
        ConvexShape::Disc { .. } => {
            return Ok(shape.clone());
        }
    };
    let n = vertices.len();
    let mut normals = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let e = b.sub(a);
        let len = e.norm();
        if len == S::zero() {
            return Err(Error::InvalidShape(
                "degenerate polygon: zero-length edge".to_string(),
            ));
        }
        let normal = Point2::new(e.y / len, -e.x / len);
        normals.push(normal);
        offsets.push(normal.dot(a));
    }

    let scale = bbox_diagonal(vertices);
    let tol = S::from_f64(1e-9) * scale;

    let mut best_r = S::neg_infinity();
    let mut candidates: Vec<Point2<S>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let Some((c, r)) = solve_active(
                    [normals[i], normals[j], normals[k]],
                    [offsets[i], offsets[j], offsets[k]],
                ) else {
                    continue;
                };
                if r <= S::zero() {
                    continue;
                }
                let feasible = normals
                    .iter()
                    .zip(&offsets)
                    .all(|(nm, &b)| nm.dot(c) + r <= b + tol);
                if !feasible {
                    continue;
                }
                if r > best_r + tol {
                    best_r = r;
                    candidates.clear();
                    candidates.push(c);
                } else if (r - best_r).abs() <= tol {
                    if !candidates.iter().any(|&q| q.dist(c) <= tol) {
                        candidates.push(c);
                    }
                }
            }
        }
    }

    if candidates.is_empty() {
        return Err(Error::InvalidShape(
            "degenerate polygon: no inscribed disc found".to_string(),
        ));
    }
    let count = S::from_usize(candidates.len());
    let center = candidates
        .iter()
        .fold(Point2::new(S::zero(), S::zero()), |acc, &c| acc.add(c))
        .scale(S::one() / count);
    ConvexShape::disc(center, best_r)
}

/// Solves the 3x3 system for three active half-planes; `None` if singular.
fn solve_active<S: Real>(n: [Point2<S>; 3], b: [S; 3]) -> Option<(Point2<S>, S)> {
    // Rows: [n_x, n_y, 1] [cx, cy, r]^T = b.
    let det = n[0].x * (n[1].y - n[2].y) - n[0].y * (n[1].x - n[2].x)
        + (n[1].x * n[2].y - n[1].y * n[2].x);
    if det.abs() < S::from_f64(1e-12) {
        return None;
    }
    let dx = b[0] * (n[1].y - n[2].y) - n[0].y * (b[1] - b[2]) + (b[1] * n[2].y - n[1].y * b[2]);
    let dy = n[0].x * (b[1] - b[2]) - b[0] * (n[1].x - n[2].x) + (n[1].x * b[2] - b[1] * n[2].x);
    let dr = n[0].x * (n[1].y * b[2] - b[1] * n[2].y) - n[0].y * (n[1].x * b[2] - b[1] * n[2].x)
        + b[0] * (n[1].x * n[2].y - n[1].y * n[2].x);
    Some((Point2::new(dx / det, dy / det), dr / det))
}

fn bbox_diagonal<S: Real>(vertices: &[Point2<S>]) -> S {
    let mut lo = Point2::new(S::infinity(), S::infinity());
    let mut hi = Point2::new(S::neg_infinity(), S::neg_infinity());
    for &v in vertices {
        lo.x = lo.x.min(v.x);
        lo.y = lo.y.min(v.y);
        hi.x = hi.x.max(v.x);
        hi.y = hi.y.max(v.y);
    }
    hi.sub(lo).norm()
}
