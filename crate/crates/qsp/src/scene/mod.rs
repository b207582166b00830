//! Robot models, environments, nested-robot sequences, the feasibility
//! predicate, and nesting validation.
//!
//! Two robot families are supported: free-floating planar rigid bodies
//! (translating, optionally rotating) and fixed-base planar serial chains
//! with revolute joints. A nested sequence pairs a robot per level with the
//! quotient decomposition of the configuration spaces; the containment
//! condition between consecutive body volumes is certified by seeded
//! Monte-Carlo sampling.

mod format;

pub use format::{load_scene, load_scene_str, save_scene, scene_to_string};

use rand::Rng;

use crate::cspace::{Configuration, ProductSpace, QuotientDecomposition, SpaceFactor};
use crate::error::{Error, Result};
use crate::geometry::{contains_sampled, BodyVolume, Containment, ConvexShape, Point2, Pose2};
use crate::real::Real;

/// One link of a fixed-base serial chain. The link shape lives in the link
/// frame with the joint at the origin and the next joint at `(length, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSpec<S> {
    pub shape: ConvexShape<S>,
    pub length: S,
    /// Joint limits; unlimited joints are full planar rotations.
    pub limits: Option<(S, S)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RobotKind<S> {
    /// Rigid body of one or more convex parts; `rotates` distinguishes the
    /// SE(2) body from its translating-only quotient robot.
    FreeFloating {
        parts: Vec<(ConvexShape<S>, Pose2<S>)>,
        rotates: bool,
    },
    /// Serial chain anchored at `base`; one revolute joint per link.
    FixedBase { base: Pose2<S>, links: Vec<LinkSpec<S>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobotModel<S> {
    pub name: String,
    pub kind: RobotKind<S>,
}

impl<S: Real> RobotModel<S> {
    pub fn dof(&self) -> usize {
        match &self.kind {
            RobotKind::FreeFloating { rotates, .. } => {
                if *rotates {
                    3
                } else {
                    2
                }
            }
            RobotKind::FixedBase { links, .. } => links.len(),
        }
    }

    /// The robot's configuration space given the workspace position bounds.
    pub fn config_space(&self, x: (S, S), y: (S, S)) -> Result<ProductSpace<S>> {
        match &self.kind {
            RobotKind::FreeFloating { rotates, .. } => {
                if *rotates {
                    ProductSpace::new(vec![SpaceFactor::RigidBody2D { x, y }])
                } else {
                    ProductSpace::new(vec![SpaceFactor::Euclidean(vec![x, y])])
                }
            }
            RobotKind::FixedBase { links, .. } => {
                if links.is_empty() {
                    return Err(Error::Validation(format!(
                        "fixed-base robot '{}' has no links",
                        self.name
                    )));
                }
                let factors = links
                    .iter()
                    .map(|l| match l.limits {
                        Some((lo, hi)) => SpaceFactor::Euclidean(vec![(lo, hi)]),
                        None => SpaceFactor::Rotation2D,
                    })
                    .collect();
                ProductSpace::new(factors)
            }
        }
    }

    /// The body volume occupied at configuration `q` (world frame).
    pub fn forward_volume(&self, q: &Configuration<S>) -> Result<BodyVolume<S>> {
        if q.dim() != self.dof() {
            return Err(Error::InvalidConfiguration(format!(
                "robot '{}' has {} dof, configuration has {}",
                self.name,
                self.dof(),
                q.dim()
            )));
        }
        match &self.kind {
            RobotKind::FreeFloating { parts, rotates } => {
                let v = q.values();
                let pose = if *rotates {
                    Pose2::new(v[0], v[1], v[2])
                } else {
                    Pose2::new(v[0], v[1], S::zero())
                };
                BodyVolume::new(
                    parts
                        .iter()
                        .map(|(shape, local)| (shape.clone(), pose.compose(*local)))
                        .collect(),
                )
            }
            RobotKind::FixedBase { base, links } => {
                let mut parts = Vec::with_capacity(links.len());
                let mut anchor = base.translation();
                let mut angle = base.theta;
                for (link, &joint) in links.iter().zip(q.values()) {
                    if let Some((lo, hi)) = link.limits {
                        if joint < lo || joint > hi {
                            return Err(Error::InvalidConfiguration(format!(
                                "joint angle {joint} outside limits [{lo}, {hi}]"
                            )));
                        }
                    }
                    angle = angle + joint;
                    let pose = Pose2::new(anchor.x, anchor.y, angle);
                    parts.push((link.shape.clone(), pose));
                    let (sin, cos) = pose.theta.sin_cos();
                    anchor = anchor.add(Point2::new(cos * link.length, sin * link.length));
                }
                BodyVolume::new(parts)
            }
        }
    }
}

/// Robots `R_1 <= ... <= R_K` with the quotient decomposition of their
/// configuration spaces.
#[derive(Debug, Clone)]
pub struct NestedRobotSequence<S> {
    robots: Vec<RobotModel<S>>,
    decomposition: QuotientDecomposition<S>,
    workspace_x: (S, S),
    workspace_y: (S, S),
}

impl<S: Real> NestedRobotSequence<S> {
    /// Builds the sequence and validates the decomposition structure.
    /// `weights`, when given, are per-factor metric weights of the full
    /// robot's space; lower levels inherit the matching prefix.
    pub fn new(
        robots: Vec<RobotModel<S>>,
        x: (S, S),
        y: (S, S),
        weights: Option<&[S]>,
    ) -> Result<Self> {
        if robots.is_empty() {
            return Err(Error::Validation("nesting lists no robots".to_string()));
        }
        let full = robots
            .last()
            .unwrap()
            .config_space(x, y)
            .and_then(|s| match weights {
                Some(w) => ProductSpace::with_weights(s.factors().to_vec(), w.to_vec()),
                None => Ok(s),
            })?;
        let mut levels = Vec::with_capacity(robots.len());
        for robot in &robots[..robots.len() - 1] {
            let plain = robot.config_space(x, y)?;
            let w = derive_prefix_weights(&full, &plain)?;
            levels.push(ProductSpace::with_weights(plain.factors().to_vec(), w)?);
        }
        levels.push(full);
        let decomposition = QuotientDecomposition::new(levels)?;
        Ok(NestedRobotSequence {
            robots,
            decomposition,
            workspace_x: x,
            workspace_y: y,
        })
    }

    pub fn depth(&self) -> usize {
        self.robots.len()
    }

    pub fn robots(&self) -> &[RobotModel<S>] {
        &self.robots
    }

    /// Robot at level `k` (1-based).
    pub fn robot(&self, k: usize) -> &RobotModel<S> {
        &self.robots[k - 1]
    }

    pub fn decomposition(&self) -> &QuotientDecomposition<S> {
        &self.decomposition
    }

    /// Workspace viewport: the position bounds the scene was declared with.
    pub fn workspace_x(&self) -> (S, S) {
        self.workspace_x
    }

    pub fn workspace_y(&self) -> (S, S) {
        self.workspace_y
    }

    /// Replaces the free-floating robots of all nested levels (k < K) with
    /// copies whose shapes are inflated by `delta`.
    pub fn inflate_nested(&self, delta: S) -> Result<Self> {
        let mut robots = self.robots.clone();
        for robot in robots.iter_mut().take(self.robots.len() - 1) {
            if let RobotKind::FreeFloating { parts, .. } = &mut robot.kind {
                for (shape, _) in parts.iter_mut() {
                    *shape = shape.inflate(delta)?;
                }
            }
        }
        Ok(NestedRobotSequence {
            robots,
            decomposition: self.decomposition.clone(),
            workspace_x: self.workspace_x,
            workspace_y: self.workspace_y,
        })
    }
}

/// Matches the full space's per-coordinate weights against a lower level's
/// factor list, requiring uniform weights within each factor.
fn derive_prefix_weights<S: Real>(
    full: &ProductSpace<S>,
    level: &ProductSpace<S>,
) -> Result<Vec<S>> {
    use crate::cspace::Coord;
    let atom_weight = |c: &Coord<S>| match c {
        Coord::Linear { weight, .. } => *weight,
        Coord::Angle { weight } => *weight,
    };
    if level.dim() > full.dim() {
        return Err(Error::Validation(
            "nested robot has more degrees of freedom than the full robot".to_string(),
        ));
    }
    let mut weights = Vec::with_capacity(level.factors().len());
    let mut offset = 0usize;
    for factor in level.factors() {
        let span = &full.coords()[offset..offset + factor.dim()];
        let w = atom_weight(&span[0]);
        if span.iter().any(|c| atom_weight(c) != w) {
            return Err(Error::Validation(
                "metric weights are not constant across a shared factor".to_string(),
            ));
        }
        weights.push(w);
        offset += factor.dim();
    }
    Ok(weights)
}

/// Planner defaults carried by a scene file.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannerDefaults<S> {
    pub r_neighbors: Option<usize>,
    pub resolution: Option<S>,
    pub thicken_eps: Option<S>,
    pub inflate_delta: Option<S>,
    pub bias_p0: Option<S>,
}

impl<S> Default for PlannerDefaults<S> {
    fn default() -> Self {
        PlannerDefaults {
            r_neighbors: None,
            resolution: None,
            thicken_eps: None,
            inflate_delta: None,
            bias_p0: None,
        }
    }
}

/// A complete planning query: environment, nested robots, and the start and
/// goal configurations of the full robot.
#[derive(Debug, Clone)]
pub struct PlanningProblem<S> {
    pub name: String,
    pub environment: BodyVolume<S>,
    pub sequence: NestedRobotSequence<S>,
    pub q_start: Configuration<S>,
    pub q_goal: Configuration<S>,
    pub defaults: PlannerDefaults<S>,
}

impl<S: Real> PlanningProblem<S> {
    pub fn new(
        name: String,
        environment: BodyVolume<S>,
        sequence: NestedRobotSequence<S>,
        q_start: Configuration<S>,
        q_goal: Configuration<S>,
        defaults: PlannerDefaults<S>,
    ) -> Result<Self> {
        let problem = PlanningProblem {
            name,
            environment,
            sequence,
            q_start,
            q_goal,
            defaults,
        };
        let k = problem.depth();
        if !problem.is_valid(k, &problem.q_start)? {
            return Err(Error::Validation(
                "start configuration collides with the environment".to_string(),
            ));
        }
        if !problem.is_valid(k, &problem.q_goal)? {
            return Err(Error::Validation(
                "goal configuration collides with the environment".to_string(),
            ));
        }
        Ok(problem)
    }

    pub fn depth(&self) -> usize {
        self.sequence.depth()
    }

    pub fn space(&self, k: usize) -> &ProductSpace<S> {
        self.sequence.decomposition().level(k)
    }

    /// Feasibility of robot `R_k` at a level-k configuration: no part of
    /// its body volume intersects the environment.
    pub fn is_valid(&self, k: usize, q: &Configuration<S>) -> Result<bool> {
        let volume = self.sequence.robot(k).forward_volume(q)?;
        Ok(!volume.intersects(&self.environment))
    }

    /// Validity predicate for planners; configurations that fail to
    /// evaluate (out of joint limits) count as invalid.
    pub fn validity_fn(&self, k: usize) -> impl Fn(&Configuration<S>) -> bool + '_ {
        move |q| self.is_valid(k, q).unwrap_or(false)
    }

    /// Start/goal pairs for every level, obtained by iterated projection.
    /// Each projected configuration must be feasible at its level; a
    /// failure signals a nesting violation.
    pub fn project_problem(&self) -> Result<Vec<(Configuration<S>, Configuration<S>)>> {
        let d = self.sequence.decomposition();
        let k = self.depth();
        let mut out = vec![(self.q_start.clone(), self.q_goal.clone())];
        for level in (1..k).rev() {
            let (s, g) = &out[out.len() - 1];
            let s = d.project(level + 1, s)?;
            let g = d.project(level + 1, g)?;
            out.push((s, g));
        }
        out.reverse();
        for (level, (s, g)) in out.iter().enumerate() {
            let level = level + 1;
            if !self.is_valid(level, s)? {
                return Err(Error::InconsistentProblem(format!(
                    "projected start is infeasible at level {level}"
                )));
            }
            if !self.is_valid(level, g)? {
                return Err(Error::InconsistentProblem(format!(
                    "projected goal is infeasible at level {level}"
                )));
            }
        }
        Ok(out)
    }

    /// Problem with the nested free-floating robots inflated by `delta`
    /// (the clearance heuristic).
    pub fn inflated(&self, delta: S) -> Result<Self> {
        Ok(PlanningProblem {
            name: self.name.clone(),
            environment: self.environment.clone(),
            sequence: self.sequence.inflate_nested(delta)?,
            q_start: self.q_start.clone(),
            q_goal: self.q_goal.clone(),
            defaults: self.defaults.clone(),
        })
    }
}

/// Outcome of the Monte-Carlo nesting certification.
#[derive(Debug, Clone, PartialEq)]
pub enum NestingCheck<S> {
    /// Condition (2) held on every sampled pair; records the sample counts
    /// so the certificate is reproducible.
    Certified {
        pairs_per_level: usize,
        points_per_pair: usize,
    },
    Counterexample {
        level: usize,
        base: Configuration<S>,
        fiber: Configuration<S>,
        witness: Point2<S>,
    },
}

/// Samples `n` pairs `(p, q)` per level and checks that the nested body
/// volume at `p` is contained in the full body volume at `p o q`.
pub fn check_nesting<S: Real, R: Rng + ?Sized>(
    sequence: &NestedRobotSequence<S>,
    n: usize,
    rng: &mut R,
) -> Result<NestingCheck<S>> {
    const POINTS_PER_PAIR: usize = 64;
    let d = sequence.decomposition();
    for k in 2..=sequence.depth() {
        let base_space = d.level(k - 1);
        let fiber_space = d.fiber(k);
        for _ in 0..n {
            let base = base_space.sample_uniform(rng);
            let fiber = fiber_space.sample_uniform(rng);
            let lifted = d.lift(k, &base, &fiber)?;
            let inner = sequence.robot(k - 1).forward_volume(&base)?;
            let outer = sequence.robot(k).forward_volume(&lifted)?;
            if let Containment::Counterexample(witness) =
                contains_sampled(&inner, &outer, POINTS_PER_PAIR, rng)?
            {
                return Ok(NestingCheck::Counterexample {
                    level: k,
                    base,
                    fiber,
                    witness,
                });
            }
        }
    }
    Ok(NestingCheck::Certified {
        pairs_per_level: n,
        points_per_pair: POINTS_PER_PAIR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn disc_robot(r: f64) -> RobotModel<f64> {
        RobotModel {
            name: "disc".to_string(),
            kind: RobotKind::FreeFloating {
                parts: vec![(
                    ConvexShape::disc(Point2::new(0.0, 0.0), r).unwrap(),
                    Pose2::identity(),
                )],
                rotates: false,
            },
        }
    }

    fn square_robot(half: f64) -> RobotModel<f64> {
        RobotModel {
            name: "square".to_string(),
            kind: RobotKind::FreeFloating {
                parts: vec![(
                    ConvexShape::rect(-half, -half, half, half).unwrap(),
                    Pose2::identity(),
                )],
                rotates: true,
            },
        }
    }

    fn link(len: f64, width: f64) -> LinkSpec<f64> {
        LinkSpec {
            shape: ConvexShape::rect(0.0, -width / 2.0, len, width / 2.0).unwrap(),
            length: len,
            limits: None,
        }
    }

    fn arm(n: usize) -> RobotModel<f64> {
        RobotModel {
            name: format!("arm{n}"),
            kind: RobotKind::FixedBase {
                base: Pose2::new(5.0, 5.0, 0.0),
                links: (0..n).map(|_| link(1.0, 0.2)).collect(),
            },
        }
    }

    #[test]
    fn free_floating_volume_at_identity() {
        let r = square_robot(0.5);
        let space = r.config_space((0.0, 10.0), (0.0, 10.0)).unwrap();
        let q = space.configuration(vec![0.0, 0.0, 0.0]).unwrap();
        let v = r.forward_volume(&q).unwrap();
        assert!(v.contains(Point2::new(0.4, 0.4)));
        assert!(!v.contains(Point2::new(0.6, 0.0)));
    }

    #[test]
    fn one_link_arm_endpoint() {
        let r = arm(1);
        let q = Configuration::from_values(vec![std::f64::consts::FRAC_PI_2]);
        let v = r.forward_volume(&q).unwrap();
        // Link points straight up from the base at (5, 5): endpoint (5, 6).
        assert!(v.contains(Point2::new(5.0, 5.9)));
        assert!(!v.contains(Point2::new(5.9, 5.0)));
    }

    #[test]
    fn volume_invariant_under_angle_representative() {
        let r = arm(2);
        let space = r.config_space((0.0, 10.0), (0.0, 10.0)).unwrap();
        let tau = std::f64::consts::TAU;
        let a = space.configuration(vec![0.3, -0.4]).unwrap();
        let b = space.configuration(vec![0.3 + tau, -0.4 - tau]).unwrap();
        let va = r.forward_volume(&a).unwrap();
        let vb = r.forward_volume(&b).unwrap();
        for (pa, pb) in va.parts().iter().zip(vb.parts()) {
            assert!((pa.1.x - pb.1.x).abs() < 1e-9);
            assert!((pa.1.y - pb.1.y).abs() < 1e-9);
            assert!((pa.1.theta - pb.1.theta).abs() < 1e-9);
        }
    }

    #[test]
    fn joint_limits_are_enforced() {
        let mut r = arm(1);
        if let RobotKind::FixedBase { links, .. } = &mut r.kind {
            links[0].limits = Some((-1.0, 1.0));
        }
        assert!(r
            .forward_volume(&Configuration::from_values(vec![2.0]))
            .is_err());
    }

    fn disc_in_square() -> NestedRobotSequence<f64> {
        NestedRobotSequence::new(
            vec![disc_robot(0.5), square_robot(0.5)],
            (0.0, 10.0),
            (0.0, 10.0),
            None,
        )
        .unwrap()
    }

    #[test]
    fn inscribed_disc_nesting_is_certified() {
        let seq = disc_in_square();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        match check_nesting(&seq, 200, &mut rng).unwrap() {
            NestingCheck::Certified { .. } => {}
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn oversized_disc_nesting_fails() {
        let seq = NestedRobotSequence::new(
            vec![disc_robot(2.0), square_robot(0.5)],
            (0.0, 10.0),
            (0.0, 10.0),
            None,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        match check_nesting(&seq, 100, &mut rng).unwrap() {
            NestingCheck::Counterexample { level, .. } => assert_eq!(level, 2),
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn shared_link_arm_nesting_is_certified() {
        let seq = NestedRobotSequence::new(
            vec![arm(1), arm(2)],
            (0.0, 10.0),
            (0.0, 10.0),
            None,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        match check_nesting(&seq, 100, &mut rng).unwrap() {
            NestingCheck::Certified { .. } => {}
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    fn empty_env_problem(seq: NestedRobotSequence<f64>) -> PlanningProblem<f64> {
        let space = seq.decomposition().level(seq.depth()).clone();
        let dim = space.dim();
        let mut start = vec![2.0; 2];
        let mut goal = vec![8.0; 2];
        start.resize(dim, 0.0);
        goal.resize(dim, 0.0);
        PlanningProblem::new(
            "test".to_string(),
            BodyVolume::empty(),
            seq,
            space.configuration(start).unwrap(),
            space.configuration(goal).unwrap(),
            PlannerDefaults::default(),
        )
        .unwrap()
    }

    #[test]
    fn empty_environment_is_always_valid() {
        let p = empty_env_problem(disc_in_square());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            let q = p.space(2).sample_uniform(&mut rng);
            assert!(p.is_valid(2, &q).unwrap());
        }
    }

    #[test]
    fn overlapping_obstacle_invalidates() {
        let seq = disc_in_square();
        let space = seq.decomposition().level(2).clone();
        let env = BodyVolume::new(vec![(
            ConvexShape::rect(4.0, 4.0, 6.0, 6.0).unwrap(),
            Pose2::identity(),
        )])
        .unwrap();
        let p = PlanningProblem::new(
            "test".to_string(),
            env,
            seq,
            space.configuration(vec![1.0, 1.0, 0.0]).unwrap(),
            space.configuration(vec![9.0, 9.0, 0.0]).unwrap(),
            PlannerDefaults::default(),
        )
        .unwrap();
        assert!(!p
            .is_valid(2, &space.configuration(vec![5.0, 5.0, 0.3]).unwrap())
            .unwrap());
        assert!(p
            .is_valid(1, &space.configuration(vec![1.0, 1.0, 0.0]).unwrap().prefix(2))
            .unwrap());
    }

    #[test]
    fn projection_examples() {
        let p = empty_env_problem(disc_in_square());
        let pairs = p.project_problem().unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0.values(), &p.q_start.values()[..2]);
        assert_eq!(pairs[1].0, p.q_start);

        // K = 1 returns the query unchanged.
        let single = NestedRobotSequence::new(
            vec![square_robot(0.5)],
            (0.0, 10.0),
            (0.0, 10.0),
            None,
        )
        .unwrap();
        let p1 = empty_env_problem(single);
        let pairs = p1.project_problem().unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0, p1.q_start);
        assert_eq!(pairs[0].1, p1.q_goal);
    }

    #[test]
    fn corrupted_nesting_is_reported_on_projection() {
        // The oversized inner disc collides where the outer square does not.
        let seq = NestedRobotSequence::new(
            vec![disc_robot(1.5), square_robot(0.5)],
            (0.0, 10.0),
            (0.0, 10.0),
            None,
        )
        .unwrap();
        let space = seq.decomposition().level(2).clone();
        let env = BodyVolume::new(vec![(
            ConvexShape::rect(2.8, 2.8, 3.2, 3.2).unwrap(),
            Pose2::identity(),
        )])
        .unwrap();
        // Start sits 1.2 away from the obstacle: fine for the square
        // (half-width 0.5) but inside the inflated disc's radius of 1.5.
        let p = PlanningProblem::new(
            "corrupt".to_string(),
            env,
            seq,
            space.configuration(vec![3.0, 4.4, 0.0]).unwrap(),
            space.configuration(vec![8.0, 8.0, 0.0]).unwrap(),
            PlannerDefaults::default(),
        )
        .unwrap();
        match p.project_problem() {
            Err(Error::InconsistentProblem(_)) => {}
            other => panic!("expected InconsistentProblem, got {other:?}"),
        }
    }

    /// Necessary condition on certified sequences: invalid base implies
    /// invalid lift, over random pairs.
    #[test]
    fn necessary_condition_randomized() {
        let seq = disc_in_square();
        let env = BodyVolume::new(vec![
            (ConvexShape::rect(3.0, 0.0, 4.0, 6.0).unwrap(), Pose2::identity()),
            (
                ConvexShape::disc(Point2::new(7.0, 7.0), 1.0).unwrap(),
                Pose2::identity(),
            ),
        ])
        .unwrap();
        let space = seq.decomposition().level(2).clone();
        let p = PlanningProblem::new(
            "nc".to_string(),
            env,
            seq,
            space.configuration(vec![1.0, 8.0, 0.0]).unwrap(),
            space.configuration(vec![9.0, 1.0, 0.0]).unwrap(),
            PlannerDefaults::default(),
        )
        .unwrap();
        let d = p.sequence.decomposition().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        let mut checked = 0;
        for _ in 0..10_000 {
            let base = d.level(1).sample_uniform(&mut rng);
            let fiber = d.fiber(2).sample_uniform(&mut rng);
            if !p.is_valid(1, &base).unwrap() {
                checked += 1;
                let lifted = d.lift(2, &base, &fiber).unwrap();
                assert!(
                    !p.is_valid(2, &lifted).unwrap(),
                    "necessary condition violated at base {base:?}"
                );
            }
        }
        assert!(checked > 500, "too few infeasible bases sampled: {checked}");
    }
}
