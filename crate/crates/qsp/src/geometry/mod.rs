//! Planar convex geometry: posed shapes, collision tests, containment
//! sampling, and inscribed discs.
//!
//! This is the substrate for robot body volumes and environments. Only
//! convex primitives (convex polygons and discs) are supported; bodies are
//! unions of posed convex parts.

mod collide;
mod inscribed;

pub use collide::collide;
pub use inscribed::inscribed_disc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::real::{normalize_angle, Real};

/// Point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Real> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2<S>) -> S {
        self.x * o.x + self.y * o.y
    }

    /// Z component of the cross product `self x o`.
    pub fn cross(self, o: Point2<S>) -> S {
        self.x * o.y - self.y * o.x
    }

    pub fn sub(self, o: Point2<S>) -> Point2<S> {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Point2<S>) -> Point2<S> {
        Point2::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, s: S) -> Point2<S> {
        Point2::new(self.x * s, self.y * s)
    }

    pub fn norm(self) -> S {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Point2<S>) -> S {
        self.sub(o).norm()
    }
}

/// Rigid placement in the plane. `theta` is kept normalized to `[-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose2<S> {
    pub x: S,
    pub y: S,
    pub theta: S,
}

impl<S: Real> Pose2<S> {
    pub fn new(x: S, y: S, theta: S) -> Self {
        Pose2 {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn identity() -> Self {
        Pose2::new(S::zero(), S::zero(), S::zero())
    }

    pub fn translation(self) -> Point2<S> {
        Point2::new(self.x, self.y)
    }

    /// Maps a local-frame point into the world frame.
    pub fn apply(self, p: Point2<S>) -> Point2<S> {
        let (s, c) = self.theta.sin_cos();
        Point2::new(self.x + c * p.x - s * p.y, self.y + s * p.x + c * p.y)
    }

    /// Maps a world-frame point back into the local frame.
    pub fn apply_inverse(self, p: Point2<S>) -> Point2<S> {
        let (s, c) = self.theta.sin_cos();
        let dx = p.x - self.x;
        let dy = p.y - self.y;
        Point2::new(c * dx + s * dy, -s * dx + c * dy)
    }

    /// `self` then `inner`: the pose of a part attached at `inner` to a body
    /// placed at `self`.
    pub fn compose(self, inner: Pose2<S>) -> Pose2<S> {
        let t = self.apply(inner.translation());
        Pose2::new(t.x, t.y, self.theta + inner.theta)
    }
}

/// A convex primitive in its local frame.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexShape<S> {
    /// Convex polygon with counter-clockwise vertices and positive area.
    Polygon { vertices: Vec<Point2<S>> },
    /// Disc with positive radius.
    Disc { center: Point2<S>, radius: S },
}

impl<S: Real> ConvexShape<S> {
    /// Builds a polygon, validating convexity, orientation, and area.
    pub fn polygon(vertices: Vec<Point2<S>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidShape(format!(
                "degenerate polygon: {} vertices, need at least 3",
                vertices.len()
            )));
        }
        let area = signed_area(&vertices);
        if area <= S::zero() {
            return Err(Error::InvalidShape(if area < S::zero() {
                "polygon vertices must be counter-clockwise".to_string()
            } else {
                "degenerate polygon: zero area".to_string()
            }));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if b.sub(a).cross(c.sub(b)) < S::zero() {
                return Err(Error::InvalidShape(format!(
                    "polygon is not convex at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        Ok(ConvexShape::Polygon { vertices })
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rect(x0: S, y0: S, x1: S, y1: S) -> Result<Self> {
        ConvexShape::polygon(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    pub fn disc(center: Point2<S>, radius: S) -> Result<Self> {
        if radius <= S::zero() {
            return Err(Error::InvalidShape(format!(
                "disc radius must be positive, got {radius}"
            )));
        }
        Ok(ConvexShape::Disc { center, radius })
    }

    pub fn area(&self) -> S {
        match self {
            ConvexShape::Polygon { vertices } => signed_area(vertices),
            ConvexShape::Disc { radius, .. } => S::PI() * *radius * *radius,
        }
    }

    /// Area centroid of the shape.
    pub fn centroid(&self) -> Point2<S> {
        match self {
            ConvexShape::Disc { center, .. } => *center,
            ConvexShape::Polygon { vertices } => {
                let n = vertices.len();
                let mut cx = S::zero();
                let mut cy = S::zero();
                let mut twice_area = S::zero();
                for i in 0..n {
                    let p = vertices[i];
                    let q = vertices[(i + 1) % n];
                    let w = p.cross(q);
                    cx = cx + (p.x + q.x) * w;
                    cy = cy + (p.y + q.y) * w;
                    twice_area = twice_area + w;
                }
                let f = S::one() / (S::from_f64(3.0) * twice_area);
                Point2::new(cx * f, cy * f)
            }
        }
    }

    /// Scales the shape by `delta`: discs about their center, polygons about
    /// their area centroid.
    pub fn inflate(&self, delta: S) -> Result<Self> {
        if delta <= S::zero() {
            return Err(Error::InvalidParameter(format!(
                "inflate factor must be positive, got {delta}"
            )));
        }
        Ok(match self {
            ConvexShape::Disc { center, radius } => ConvexShape::Disc {
                center: *center,
                radius: *radius * delta,
            },
            ConvexShape::Polygon { vertices } => {
                let c = self.centroid();
                ConvexShape::Polygon {
                    vertices: vertices
                        .iter()
                        .map(|v| c.add(v.sub(c).scale(delta)))
                        .collect(),
                }
            }
        })
    }

    /// True if the world-frame point lies in the closed posed shape.
    pub fn contains(&self, pose: Pose2<S>, p: Point2<S>) -> bool {
        let local = pose.apply_inverse(p);
        match self {
            ConvexShape::Disc { center, radius } => local.dist(*center) <= *radius,
            ConvexShape::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    b.sub(a).cross(local.sub(a)) >= S::zero()
                })
            }
        }
    }

    /// Samples a point uniformly from the posed shape.
    pub fn sample_point<R: Rng + ?Sized>(&self, pose: Pose2<S>, rng: &mut R) -> Point2<S> {
        let local = match self {
            ConvexShape::Disc { center, radius } => {
                let r = *radius * rng.gen_range(S::zero()..S::one()).sqrt();
                let phi = rng.gen_range(-S::PI()..S::PI());
                let (s, c) = phi.sin_cos();
                center.add(Point2::new(r * c, r * s))
            }
            ConvexShape::Polygon { vertices } => {
                // Fan triangulation from vertex 0, triangle picked by area.
                let v0 = vertices[0];
                let tris: Vec<(Point2<S>, Point2<S>)> = vertices
                    .windows(2)
                    .skip(1)
                    .map(|w| (w[0], w[1]))
                    .collect();
                let areas: Vec<S> = tris
                    .iter()
                    .map(|(a, b)| (a.sub(v0).cross(b.sub(v0)) / S::from_f64(2.0)).abs())
                    .collect();
                let total: S = areas.iter().fold(S::zero(), |acc, &a| acc + a);
                let mut pick = rng.gen_range(S::zero()..S::one()) * total;
                let mut idx = tris.len() - 1;
                for (i, &a) in areas.iter().enumerate() {
                    if pick < a {
                        idx = i;
                        break;
                    }
                    pick = pick - a;
                }
                let (a, b) = tris[idx];
                let su = rng.gen_range(S::zero()..S::one()).sqrt();
                let v = rng.gen_range(S::zero()..S::one());
                // Uniform in triangle (v0, a, b).
                v0.scale(S::one() - su)
                    .add(a.scale(su * (S::one() - v)))
                    .add(b.scale(su * v))
            }
        };
        pose.apply(local)
    }
}

fn signed_area<S: Real>(vertices: &[Point2<S>]) -> S {
    let n = vertices.len();
    let mut a = S::zero();
    for i in 0..n {
        a = a + vertices[i].cross(vertices[(i + 1) % n]);
    }
    a / S::from_f64(2.0)
}

/// A body volume: a non-empty union of posed convex parts in the world frame.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyVolume<S> {
    parts: Vec<(ConvexShape<S>, Pose2<S>)>,
}

/// Outcome of a Monte-Carlo containment check.
#[derive(Debug, Clone, PartialEq)]
pub enum Containment<S> {
    Contained,
    Counterexample(Point2<S>),
}

impl<S: Real> BodyVolume<S> {
    pub fn new(parts: Vec<(ConvexShape<S>, Pose2<S>)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidShape("body volume has no parts".to_string()));
        }
        Ok(BodyVolume { parts })
    }

    /// An empty obstacle set (used for environments without obstacles).
    pub fn empty() -> Self {
        BodyVolume { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[(ConvexShape<S>, Pose2<S>)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, p: Point2<S>) -> bool {
        self.parts.iter().any(|(s, pose)| s.contains(*pose, p))
    }

    /// True if any part of `self` intersects any part of `other`.
    pub fn intersects(&self, other: &BodyVolume<S>) -> bool {
        self.parts.iter().any(|(sa, pa)| {
            other
                .parts
                .iter()
                .any(|(sb, pb)| collide(sa, *pa, sb, *pb))
        })
    }

    /// Samples a point uniformly from the union of parts (parts weighted by
    /// area; overlap regions are weighted accordingly).
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2<S> {
        let areas: Vec<S> = self.parts.iter().map(|(s, _)| s.area()).collect();
        let total: S = areas.iter().fold(S::zero(), |acc, &a| acc + a);
        let mut pick = rng.gen_range(S::zero()..S::one()) * total;
        let mut idx = self.parts.len() - 1;
        for (i, &a) in areas.iter().enumerate() {
            if pick < a {
                idx = i;
                break;
            }
            pick = pick - a;
        }
        let (shape, pose) = &self.parts[idx];
        shape.sample_point(*pose, rng)
    }
}

/// Monte-Carlo check that `inner` is contained in `outer`: samples `n`
/// points uniformly from `inner` and returns the first one outside `outer`.
pub fn contains_sampled<S: Real, R: Rng + ?Sized>(
    inner: &BodyVolume<S>,
    outer: &BodyVolume<S>,
    n: usize,
    rng: &mut R,
) -> Result<Containment<S>> {
    if inner.is_empty() {
        return Err(Error::InvalidShape(
            "containment check needs a non-empty inner volume".to_string(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "containment check needs n >= 1 samples".to_string(),
        ));
    }
    for _ in 0..n {
        let p = inner.sample_point(rng);
        if !outer.contains(p) {
            return Ok(Containment::Counterexample(p));
        }
    }
    Ok(Containment::Contained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn id() -> Pose2<f64> {
        Pose2::identity()
    }

    fn volume(parts: Vec<(ConvexShape<f64>, Pose2<f64>)>) -> BodyVolume<f64> {
        BodyVolume::new(parts).unwrap()
    }

    #[test]
    fn polygon_validation() {
        assert!(matches!(
            ConvexShape::polygon(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]),
            Err(crate::Error::InvalidShape(_))
        ));
        // Clockwise ordering is rejected.
        assert!(ConvexShape::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 0.0),
        ])
        .is_err());
        // Non-convex chevron is rejected.
        assert!(ConvexShape::polygon(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(2.0, 2.0),
        ])
        .is_err());
    }

    #[test]
    fn contained_disc_in_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let inner = volume(vec![(
            ConvexShape::disc(Point2::new(0.5, 0.5), 0.4).unwrap(),
            id(),
        )]);
        let outer = volume(vec![(ConvexShape::rect(0.0, 0.0, 1.0, 1.0).unwrap(), id())]);
        assert_eq!(
            contains_sampled(&inner, &outer, 1000, &mut rng).unwrap(),
            Containment::Contained
        );
    }

    #[test]
    fn oversized_disc_yields_counterexample() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let inner = volume(vec![(
            ConvexShape::disc(Point2::new(0.5, 0.5), 2.0).unwrap(),
            id(),
        )]);
        let outer = volume(vec![(ConvexShape::rect(0.0, 0.0, 1.0, 1.0).unwrap(), id())]);
        match contains_sampled(&inner, &outer, 1000, &mut rng).unwrap() {
            Containment::Counterexample(p) => assert!(!outer.contains(p)),
            Containment::Contained => panic!("oversized disc reported contained"),
        }
    }

    #[test]
    fn identity_volume_is_contained() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = volume(vec![
            (ConvexShape::rect(0.0, 0.0, 1.0, 1.0).unwrap(), id()),
            (ConvexShape::disc(Point2::new(1.2, 0.5), 0.3).unwrap(), id()),
        ]);
        assert_eq!(
            contains_sampled(&v, &v, 1000, &mut rng).unwrap(),
            Containment::Contained
        );
    }

    #[test]
    fn inflate_examples() {
        let d: ConvexShape<f64> = ConvexShape::disc(Point2::new(1.0, 2.0), 0.5).unwrap();
        match d.inflate(1.2).unwrap() {
            ConvexShape::Disc { center, radius } => {
                assert_eq!(center, Point2::new(1.0, 2.0));
                assert!((radius - 0.6).abs() < 1e-12);
            }
            _ => panic!(),
        }
        let s = ConvexShape::rect(0.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(s.inflate(1.0).unwrap(), s);
        match s.inflate(2.0).unwrap() {
            ConvexShape::Polygon { vertices } => {
                assert!(vertices[0].dist(Point2::new(-0.5, -0.5)) < 1e-12);
                assert!(vertices[2].dist(Point2::new(1.5, 1.5)) < 1e-12);
            }
            _ => panic!(),
        }
        assert!(s.inflate(0.0).is_err());
        assert!(s.inflate(-1.0).is_err());
    }

    #[test]
    fn inscribed_disc_fits_and_inflation_escapes() {
        let polys = vec![
            ConvexShape::rect(0.0, 0.0, 1.0, 1.0).unwrap(),
            ConvexShape::rect(-1.0, 2.0, 3.0, 3.0).unwrap(),
            ConvexShape::polygon(vec![
                Point2::new(0.0, 0.0),
                Point2::new(2.0, 0.2),
                Point2::new(2.5, 1.8),
                Point2::new(0.4, 2.4),
            ])
            .unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in polys {
            let disc = inscribed_disc(&p).unwrap();
            let inner = volume(vec![(disc.clone(), id())]);
            let outer = volume(vec![(p.clone(), id())]);
            assert_eq!(
                contains_sampled(&inner, &outer, 2000, &mut rng).unwrap(),
                Containment::Contained
            );
            // Inflating past the boundary: the center-to-edge slack equals the
            // radius, so a 1 + 1e-3 blow-up must cross some edge line.
            let (center, radius) = match &disc {
                ConvexShape::Disc { center, radius } => (*center, *radius),
                _ => unreachable!(),
            };
            let grown = radius * (1.0 + 1e-3);
            let verts = match &p {
                ConvexShape::Polygon { vertices } => vertices.clone(),
                _ => unreachable!(),
            };
            let n = verts.len();
            let mut min_slack = f64::MAX;
            for i in 0..n {
                let e = verts[(i + 1) % n].sub(verts[i]);
                let len = e.norm();
                let normal = Point2::new(e.y / len, -e.x / len);
                min_slack = min_slack.min(normal.dot(verts[i]) - normal.dot(center));
            }
            assert!(grown > min_slack, "inflated disc still inside polygon");
        }
    }

    /// Dense point-sampling oracle: no shape pair where sampled points of one
    /// shape lie in the other may be reported collision-free.
    #[test]
    fn collide_agrees_with_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut positives = 0usize;
        for _ in 0..1000 {
            let a = random_shape(&mut rng);
            let pa = random_pose(&mut rng);
            let b = random_shape(&mut rng);
            let pb = random_pose(&mut rng);
            let va = volume(vec![(a.clone(), pa)]);
            let vb = volume(vec![(b.clone(), pb)]);
            let mut oracle_hit = false;
            for _ in 0..200 {
                if vb.contains(va.sample_point(&mut rng)) || va.contains(vb.sample_point(&mut rng))
                {
                    oracle_hit = true;
                    break;
                }
            }
            let fast = collide(&a, pa, &b, pb);
            // Symmetry on every sampled pair.
            assert_eq!(fast, collide(&b, pb, &a, pa));
            if oracle_hit {
                positives += 1;
                assert!(fast, "sampling oracle found overlap, collide() missed it");
            }
        }
        assert!(positives > 100, "oracle produced too few overlaps: {positives}");
    }

    fn random_shape(rng: &mut ChaCha8Rng) -> ConvexShape<f64> {
        use rand::Rng;
        if rng.gen_bool(0.4) {
            ConvexShape::disc(
                Point2::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
                rng.gen_range(0.1..0.8),
            )
            .unwrap()
        } else {
            let w = rng.gen_range(0.2..1.4);
            let h = rng.gen_range(0.2..1.4);
            ConvexShape::rect(-w / 2.0, -h / 2.0, w / 2.0, h / 2.0).unwrap()
        }
    }

    fn random_pose(rng: &mut ChaCha8Rng) -> Pose2<f64> {
        use rand::Rng;
        Pose2::new(
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-3.14..3.14),
        )
    }
}
