//! Configuration-space algebra: primitive factors, bounded products, the
//! weighted product metric, uniform sampling, geodesic interpolation,
//! measure, and the quotient projection/lift between nested levels.
//!
//! Spaces are products of bounded Euclidean boxes and planar rotations. A
//! quotient decomposition is a chain of spaces where each level extends the
//! previous one by a fiber of trailing coordinates; projecting drops the
//! fiber, lifting concatenates it back.

use rand::Rng;

use crate::error::{Error, Result};
use crate::real::{angle_delta, normalize_angle, Real};

/// A primitive factor of a product space.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceFactor<S> {
    /// Axis-aligned box with per-axis `(lower, upper)` bounds.
    Euclidean(Vec<(S, S)>),
    /// Planar rotation, one angle coordinate on `[-pi, pi)` with the
    /// geodesic metric.
    Rotation2D,
    /// Planar rigid body: the fixed composite `Euclidean(2) x Rotation2D`.
    RigidBody2D { x: (S, S), y: (S, S) },
}

impl<S: Real> SpaceFactor<S> {
    pub fn dim(&self) -> usize {
        match self {
            SpaceFactor::Euclidean(bounds) => bounds.len(),
            SpaceFactor::Rotation2D => 1,
            SpaceFactor::RigidBody2D { .. } => 3,
        }
    }

    pub fn measure(&self) -> S {
        match self {
            SpaceFactor::Euclidean(bounds) => bounds
                .iter()
                .fold(S::one(), |acc, &(lo, hi)| acc * (hi - lo)),
            SpaceFactor::Rotation2D => S::TAU(),
            SpaceFactor::RigidBody2D { x, y } => (x.1 - x.0) * (y.1 - y.0) * S::TAU(),
        }
    }

    fn validate(&self) -> Result<()> {
        let check = |lo: S, hi: S| -> Result<()> {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidParameter(format!(
                    "factor bounds must be finite with lower < upper, got [{lo}, {hi}]"
                )));
            }
            Ok(())
        };
        match self {
            SpaceFactor::Euclidean(bounds) => {
                if bounds.is_empty() {
                    return Err(Error::InvalidParameter(
                        "euclidean factor needs at least one axis".to_string(),
                    ));
                }
                bounds.iter().try_for_each(|&(lo, hi)| check(lo, hi))
            }
            SpaceFactor::Rotation2D => Ok(()),
            SpaceFactor::RigidBody2D { x, y } => {
                check(x.0, x.1)?;
                check(y.0, y.1)
            }
        }
    }
}

/// Per-coordinate view of a factor, used by the metric and sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coord<S> {
    Linear { lo: S, hi: S, weight: S },
    Angle { weight: S },
}

/// A bounded product of factors with positive per-factor metric weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace<S> {
    factors: Vec<SpaceFactor<S>>,
    weights: Vec<S>,
    coords: Vec<Coord<S>>,
}

impl<S: Real> ProductSpace<S> {
    /// Builds a space with unit metric weights.
    pub fn new(factors: Vec<SpaceFactor<S>>) -> Result<Self> {
        let weights = vec![S::one(); factors.len()];
        ProductSpace::with_weights(factors, weights)
    }

    pub fn with_weights(factors: Vec<SpaceFactor<S>>, weights: Vec<S>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter(
                "product space needs at least one factor".to_string(),
            ));
        }
        if weights.len() != factors.len() {
            return Err(Error::InvalidParameter(format!(
                "got {} weights for {} factors",
                weights.len(),
                factors.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > S::zero())) {
            return Err(Error::InvalidParameter(format!(
                "metric weights must be positive, got {w}"
            )));
        }
        let mut coords = Vec::new();
        for (factor, &w) in factors.iter().zip(&weights) {
            factor.validate()?;
            match factor {
                SpaceFactor::Euclidean(bounds) => {
                    coords.extend(
                        bounds
                            .iter()
                            .map(|&(lo, hi)| Coord::Linear { lo, hi, weight: w }),
                    );
                }
                SpaceFactor::Rotation2D => coords.push(Coord::Angle { weight: w }),
                SpaceFactor::RigidBody2D { x, y } => {
                    coords.push(Coord::Linear { lo: x.0, hi: x.1, weight: w });
                    coords.push(Coord::Linear { lo: y.0, hi: y.1, weight: w });
                    coords.push(Coord::Angle { weight: w });
                }
            }
        }
        Ok(ProductSpace {
            factors,
            weights,
            coords,
        })
    }

    pub fn factors(&self) -> &[SpaceFactor<S>] {
        &self.factors
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// Flattened per-coordinate view (bounds and weights per axis).
    pub fn coords(&self) -> &[Coord<S>] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Product measure: box volumes for Euclidean factors, `2 pi` per
    /// rotation.
    pub fn measure(&self) -> S {
        self.factors
            .iter()
            .fold(S::one(), |acc, f| acc * f.measure())
    }

    /// Metric diameter proxy: the 2-norm of per-coordinate extents, with
    /// `pi` for angles. Used for default resolutions and density guards.
    pub fn diagonal(&self) -> S {
        self.coords
            .iter()
            .fold(S::zero(), |acc, c| {
                let e = match c {
                    Coord::Linear { lo, hi, .. } => *hi - *lo,
                    Coord::Angle { .. } => S::PI(),
                };
                acc + e * e
            })
            .sqrt()
    }

    /// Validates and canonicalizes raw coordinates into a configuration.
    pub fn configuration(&self, mut values: Vec<S>) -> Result<Configuration<S>> {
        if values.len() != self.dim() {
            return Err(Error::InvalidConfiguration(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                values.len()
            )));
        }
        for (v, c) in values.iter_mut().zip(&self.coords) {
            match c {
                Coord::Linear { lo, hi, .. } => {
                    if *v < *lo || *v > *hi {
                        return Err(Error::InvalidConfiguration(format!(
                            "coordinate {v} outside bounds [{lo}, {hi}]"
                        )));
                    }
                }
                Coord::Angle { .. } => *v = normalize_angle(*v),
            }
        }
        Ok(Configuration { values })
    }

    pub fn contains(&self, q: &Configuration<S>) -> bool {
        q.values.len() == self.dim()
            && q.values.iter().zip(&self.coords).all(|(v, c)| match c {
                Coord::Linear { lo, hi, .. } => *v >= *lo && *v <= *hi,
                Coord::Angle { .. } => v.is_finite(),
            })
    }

    /// Uniform sample: each Euclidean axis uniform in its bounds, each angle
    /// uniform on `[-pi, pi)`, all coordinates independent.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Configuration<S> {
        let values = self
            .coords
            .iter()
            .map(|c| match c {
                Coord::Linear { lo, hi, .. } => rng.gen_range(*lo..*hi),
                Coord::Angle { .. } => rng.gen_range(-S::PI()..S::PI()),
            })
            .collect();
        Configuration { values }
    }

    /// Weighted 2-norm over factors; rotation coordinates use the geodesic
    /// distance `min(|d|, 2 pi - |d|)`.
    pub fn distance(&self, a: &Configuration<S>, b: &Configuration<S>) -> Result<S> {
        if a.values.len() != self.dim() || b.values.len() != self.dim() {
            return Err(Error::InvalidConfiguration(format!(
                "distance between {}- and {}-dim configurations in a {}-dim space",
                a.values.len(),
                b.values.len(),
                self.dim()
            )));
        }
        Ok(self.distance_unchecked(a, b))
    }

    pub(crate) fn distance_unchecked(&self, a: &Configuration<S>, b: &Configuration<S>) -> S {
        let mut acc = S::zero();
        for ((&x, &y), c) in a.values.iter().zip(&b.values).zip(&self.coords) {
            let (d, w) = match c {
                Coord::Linear { weight, .. } => (y - x, *weight),
                Coord::Angle { weight } => (angle_delta(x, y), *weight),
            };
            let wd = w * d;
            acc = acc + wd * wd;
        }
        acc.sqrt()
    }

    /// Per-factor geodesic interpolation; exact at the endpoints.
    pub fn interpolate(
        &self,
        a: &Configuration<S>,
        b: &Configuration<S>,
        t: S,
    ) -> Result<Configuration<S>> {
        if t < S::zero() || t > S::one() {
            return Err(Error::InvalidParameter(format!(
                "interpolation parameter {t} outside [0, 1]"
            )));
        }
        if a.values.len() != self.dim() || b.values.len() != self.dim() {
            return Err(Error::InvalidConfiguration(
                "interpolation operands do not match the space dimension".to_string(),
            ));
        }
        Ok(self.interpolate_unchecked(a, b, t))
    }

    pub(crate) fn interpolate_unchecked(
        &self,
        a: &Configuration<S>,
        b: &Configuration<S>,
        t: S,
    ) -> Configuration<S> {
        if t == S::zero() {
            return a.clone();
        }
        if t == S::one() {
            return b.clone();
        }
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .zip(&self.coords)
            .map(|((&x, &y), c)| match c {
                Coord::Linear { lo, hi, .. } => (x + t * (y - x)).max(*lo).min(*hi),
                Coord::Angle { .. } => normalize_angle(x + t * angle_delta(x, y)),
            })
            .collect();
        Configuration { values }
    }
}

/// A point in a product space: a flat coordinate vector in factor order,
/// with angles stored normalized to `[-pi, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration<S> {
    values: Vec<S>,
}

impl<S: Real> Configuration<S> {
    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Assembles a configuration from raw coordinates, normalizing nothing.
    /// Prefer [`ProductSpace::configuration`] when bounds should be checked.
    pub fn from_values(values: Vec<S>) -> Self {
        Configuration { values }
    }

    pub fn prefix(&self, dim: usize) -> Configuration<S> {
        Configuration {
            values: self.values[..dim].to_vec(),
        }
    }

    pub fn suffix(&self, from: usize) -> Configuration<S> {
        Configuration {
            values: self.values[from..].to_vec(),
        }
    }

    pub fn concat(&self, other: &Configuration<S>) -> Configuration<S> {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Configuration { values }
    }
}

/// A violation found while validating a quotient decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionViolation {
    /// 1-based level at which the structure breaks.
    pub level: usize,
    pub reason: String,
}

/// Nested chain of product spaces `M_1 c ... c M_K` where each level's
/// coordinate list extends the previous level's, together with the derived
/// fiber spaces `C_k`.
#[derive(Debug, Clone)]
pub struct QuotientDecomposition<S> {
    levels: Vec<ProductSpace<S>>,
    fibers: Vec<ProductSpace<S>>,
}

impl<S: Real> QuotientDecomposition<S> {
    pub fn new(levels: Vec<ProductSpace<S>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidParameter(
                "decomposition needs at least one level".to_string(),
            ));
        }
        if let Err(v) = validate_levels(&levels) {
            return Err(Error::InvalidDecomposition {
                level: v.level,
                reason: v.reason,
            });
        }
        let fibers = levels
            .iter()
            .enumerate()
            .map(|(i, level)| {
                if i == 0 {
                    // C_1 = M_1 by the M_0 = empty-space convention.
                    level.clone()
                } else {
                    fiber_space(&levels[i - 1], level)
                }
            })
            .collect();
        Ok(QuotientDecomposition { levels, fibers })
    }

    /// Number of levels K.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[ProductSpace<S>] {
        &self.levels
    }

    /// The space `M_k` (1-based).
    pub fn level(&self, k: usize) -> &ProductSpace<S> {
        &self.levels[k - 1]
    }

    /// The fiber `C_k` (1-based); `C_1` is `M_1` itself.
    pub fn fiber(&self, k: usize) -> &ProductSpace<S> {
        &self.fibers[k - 1]
    }

    /// Checks the nested-product structure and the supported quotient
    /// patterns, reporting the first violation.
    pub fn validate(&self) -> std::result::Result<(), DecompositionViolation> {
        validate_levels(&self.levels)
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k < 1 || k > self.depth() {
            return Err(Error::InvalidLevel {
                level: k,
                reason: format!("decomposition has {} levels", self.depth()),
            });
        }
        Ok(())
    }

    /// Drops the fiber coordinates: the prefix of `q` living in `M_{k-1}`.
    pub fn project(&self, k: usize, q: &Configuration<S>) -> Result<Configuration<S>> {
        self.check_level(k)?;
        if k < 2 {
            return Err(Error::InvalidLevel {
                level: k,
                reason: "projection needs k >= 2".to_string(),
            });
        }
        if q.dim() != self.level(k).dim() {
            return Err(Error::InvalidConfiguration(format!(
                "projected configuration has dimension {}, level {k} has {}",
                q.dim(),
                self.level(k).dim()
            )));
        }
        Ok(q.prefix(self.level(k - 1).dim()))
    }

    /// Fiber coordinates of a level-k configuration.
    pub fn fiber_part(&self, k: usize, q: &Configuration<S>) -> Result<Configuration<S>> {
        self.check_level(k)?;
        let base_dim = if k >= 2 { self.level(k - 1).dim() } else { 0 };
        Ok(q.suffix(base_dim))
    }

    /// Concatenates a base configuration with a fiber configuration; for
    /// `k = 1` the base must be empty and the fiber is the result.
    pub fn lift(
        &self,
        k: usize,
        base: &Configuration<S>,
        fiber: &Configuration<S>,
    ) -> Result<Configuration<S>> {
        self.check_level(k)?;
        let base_dim = if k >= 2 { self.level(k - 1).dim() } else { 0 };
        if base.dim() != base_dim {
            return Err(Error::InvalidConfiguration(format!(
                "lift base has dimension {}, level {} base needs {}",
                base.dim(),
                k,
                base_dim
            )));
        }
        if base.dim() + fiber.dim() != self.level(k).dim() {
            return Err(Error::InvalidConfiguration(format!(
                "lift of {} + {} coordinates does not fill level {k} ({})",
                base.dim(),
                fiber.dim(),
                self.level(k).dim()
            )));
        }
        Ok(base.concat(fiber))
    }
}

fn validate_levels<S: Real>(
    levels: &[ProductSpace<S>],
) -> std::result::Result<(), DecompositionViolation> {
    for k in 1..levels.len() {
        let prev = &levels[k - 1];
        let cur = &levels[k];
        let violation = |reason: String| DecompositionViolation {
            level: k + 1,
            reason,
        };
        if cur.dim() <= prev.dim() {
            return Err(violation(format!(
                "level {} has dimension {}, not larger than level {} ({})",
                k + 1,
                cur.dim(),
                k,
                prev.dim()
            )));
        }
        for (i, (a, b)) in prev.coords().iter().zip(cur.coords()).enumerate() {
            if a != b {
                return Err(violation(format!(
                    "coordinate {i} differs between levels {} and {} ({a:?} vs {b:?})",
                    k,
                    k + 1
                )));
            }
        }
        // Supported planar quotient patterns: the removed fiber is either a
        // Euclidean block (R^n / R^m families) or pure rotations
        // (SE(2) / SO(2) and nested fixed-base chains). Mixed fibers would
        // collapse translation and rotation in one step, which none of the
        // supported computations do.
        let fiber = &cur.coords()[prev.dim()..];
        let linear = fiber
            .iter()
            .filter(|c| matches!(c, Coord::Linear { .. }))
            .count();
        let angular = fiber.len() - linear;
        if linear > 0 && angular > 0 {
            return Err(violation(format!(
                "unsupported quotient pattern: fiber mixes {linear} linear and {angular} angular coordinates"
            )));
        }
    }
    Ok(())
}

/// Builds the fiber space `C_k` from the coordinate suffix, grouping
/// contiguous equally-weighted linear axes into one Euclidean factor.
fn fiber_space<S: Real>(prev: &ProductSpace<S>, cur: &ProductSpace<S>) -> ProductSpace<S> {
    let suffix = &cur.coords()[prev.dim()..];
    let mut factors: Vec<SpaceFactor<S>> = Vec::new();
    let mut weights: Vec<S> = Vec::new();
    for c in suffix {
        match *c {
            Coord::Linear { lo, hi, weight } => {
                if let (Some(SpaceFactor::Euclidean(bounds)), Some(&w)) =
                    (factors.last_mut(), weights.last())
                {
                    if w == weight {
                        bounds.push((lo, hi));
                        continue;
                    }
                }
                factors.push(SpaceFactor::Euclidean(vec![(lo, hi)]));
                weights.push(weight);
            }
            Coord::Angle { weight } => {
                factors.push(SpaceFactor::Rotation2D);
                weights.push(weight);
            }
        }
    }
    ProductSpace::with_weights(factors, weights).expect("fiber of a validated decomposition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r2() -> ProductSpace<f64> {
        ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 1.0), (0.0, 1.0)])]).unwrap()
    }

    fn se2() -> ProductSpace<f64> {
        ProductSpace::new(vec![SpaceFactor::RigidBody2D {
            x: (0.0, 1.0),
            y: (0.0, 1.0),
        }])
        .unwrap()
    }

    fn so2() -> ProductSpace<f64> {
        ProductSpace::new(vec![SpaceFactor::Rotation2D]).unwrap()
    }

    #[test]
    fn sampling_respects_bounds_and_seed() {
        let s = ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 1.0)])]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let q = s.sample_uniform(&mut rng);
            assert!(q.values()[0] >= 0.0 && q.values()[0] < 1.0);
        }
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            (0..10).map(|_| s.sample_uniform(&mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            (0..10).map(|_| s.sample_uniform(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn rotation_sampling_is_uniform_per_octant() {
        let s = so2();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 100_000;
        let mut counts = [0usize; 8];
        for _ in 0..n {
            let theta = s.sample_uniform(&mut rng).values()[0];
            let octant = (((theta + std::f64::consts::PI) / (std::f64::consts::PI / 4.0)).floor()
                as usize)
                .min(7);
            counts[octant] += 1;
        }
        for c in counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.125).abs() < 0.01, "octant frequency {freq}");
        }
    }

    #[test]
    fn distance_examples() {
        let s: ProductSpace<f64> = ProductSpace::new(vec![SpaceFactor::Euclidean(vec![
            (-10.0, 10.0),
            (-10.0, 10.0),
        ])])
        .unwrap();
        let a = s.configuration(vec![0.0, 0.0]).unwrap();
        let b = s.configuration(vec![3.0, 4.0]).unwrap();
        assert!((s.distance(&a, &b).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(s.distance(&a, &a).unwrap(), 0.0);

        let r = so2();
        let x = r.configuration(vec![0.1]).unwrap();
        let y = r
            .configuration(vec![2.0 * std::f64::consts::PI - 0.1])
            .unwrap();
        assert!((r.distance(&x, &y).unwrap() - 0.2).abs() < 1e-12);

        let short = Configuration::from_values(vec![1.0]);
        assert!(s.distance(&a, &short).is_err());
    }

    #[test]
    fn interpolation_examples() {
        let s: ProductSpace<f64> =
            ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 2.0)])]).unwrap();
        let a = s.configuration(vec![0.0]).unwrap();
        let b = s.configuration(vec![2.0]).unwrap();
        assert_eq!(s.interpolate(&a, &b, 0.0).unwrap(), a);
        assert_eq!(s.interpolate(&a, &b, 1.0).unwrap(), b);
        assert!((s.interpolate(&a, &b, 0.25).unwrap().values()[0] - 0.5).abs() < 1e-12);
        assert!(s.interpolate(&a, &b, 1.5).is_err());

        // Crossing the angular seam: midpoint of 3.0 and -3.0 is +-pi, not 0.
        let r = so2();
        let x = r.configuration(vec![3.0]).unwrap();
        let y = r.configuration(vec![-3.0]).unwrap();
        let mid = r.interpolate(&x, &y, 0.5).unwrap().values()[0];
        assert!(
            (mid.abs() - std::f64::consts::PI).abs() < 1e-9,
            "midpoint {mid} should sit at the seam"
        );
    }

    #[test]
    fn measure_examples() {
        let b: ProductSpace<f64> =
            ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 1.0), (0.0, 2.0)])]).unwrap();
        assert!((b.measure() - 2.0).abs() < 1e-12);
        assert!((so2().measure() - std::f64::consts::TAU).abs() < 1e-12);
        assert!((se2().measure() - std::f64::consts::TAU).abs() < 1e-12);
    }

    #[test]
    fn decomposition_project_lift() {
        let d = QuotientDecomposition::new(vec![r2(), se2()]).unwrap();
        let q = d.level(2).configuration(vec![0.6, 0.2, 0.7]).unwrap();
        let p = d.project(2, &q).unwrap();
        assert_eq!(p.values(), &[0.6, 0.2]);
        let f = d.fiber_part(2, &q).unwrap();
        assert_eq!(f.values(), &[0.7]);
        assert_eq!(d.lift(2, &p, &f).unwrap(), q);
        // k=1 lift is the identity on the fiber.
        let empty = Configuration::from_values(vec![]);
        assert_eq!(d.lift(1, &empty, &p).unwrap(), p);
        assert!(d.project(1, &p).is_err());
        assert!(d.project(3, &q).is_err());
    }

    #[test]
    fn fiber_of_se2_over_r2_is_rotation() {
        let d = QuotientDecomposition::new(vec![r2(), se2()]).unwrap();
        assert_eq!(d.fiber(2).factors(), &[SpaceFactor::Rotation2D]);
        assert_eq!(d.fiber(1).dim(), 2);
    }

    #[test]
    fn euclidean_block_split_is_accepted() {
        // R^1 inside R^3 with fiber R^2.
        let l1 = ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 1.0)])]).unwrap();
        let l2 = ProductSpace::new(vec![SpaceFactor::Euclidean(vec![
            (0.0, 1.0),
            (0.0, 2.0),
            (0.0, 3.0),
        ])])
        .unwrap();
        let d = QuotientDecomposition::new(vec![l1, l2]).unwrap();
        assert_eq!(d.fiber(2).dim(), 2);
        assert_eq!(d.fiber(2).factors().len(), 1);
    }

    #[test]
    fn mismatched_prefix_is_rejected() {
        let l1 =
            ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 2.0), (0.0, 1.0)])]).unwrap();
        let err = QuotientDecomposition::new(vec![l1, se2()]).unwrap_err();
        match err {
            Error::InvalidDecomposition { level, .. } => assert_eq!(level, 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn mixed_fiber_is_rejected() {
        // Removing SO(2) and an extra axis in one step is not a supported
        // quotient computation.
        let l1 = ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, 1.0)])]).unwrap();
        let l2 = ProductSpace::new(vec![
            SpaceFactor::Euclidean(vec![(0.0, 1.0)]),
            SpaceFactor::Rotation2D,
            SpaceFactor::Euclidean(vec![(0.0, 1.0)]),
        ])
        .unwrap();
        assert!(QuotientDecomposition::new(vec![l1, l2]).is_err());
    }

    #[test]
    fn configuration_validation() {
        let s = r2();
        assert!(s.configuration(vec![0.5, 1.5]).is_err());
        assert!(s.configuration(vec![0.5]).is_err());
        let q = se2()
            .configuration(vec![0.5, 0.5, 3.0 + std::f64::consts::TAU])
            .unwrap();
        assert!((q.values()[2] - 3.0).abs() < 1e-9);
    }
}
