//! Quotient-space motion planning for planar robots.
//!
//! The library decomposes a robot's configuration space into a sequence of
//! nested quotient spaces by nesting simpler robots inside the full robot,
//! and plans with a roadmap planner (QMP) that grows one graph per level,
//! scheduling growth by a density key. A baseline PRM, a brute-force grid
//! oracle, a seeded benchmark harness, and an SVG renderer round out the
//! toolkit.
//!
//! Core math is generic over the scalar type via [`real::Real`]; the aliases
//! below fix `f64`, which is what scene files and the CLI use.

pub mod cspace;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod oracle;
pub mod qmp;
pub mod real;
pub mod render;
pub mod roadmap;
pub mod scene;

pub use error::{Error, Result};
pub use real::Real;

pub type Point2 = geometry::Point2<f64>;
pub type Pose2 = geometry::Pose2<f64>;
pub type ConvexShape = geometry::ConvexShape<f64>;
pub type BodyVolume = geometry::BodyVolume<f64>;
pub type SpaceFactor = cspace::SpaceFactor<f64>;
pub type ProductSpace = cspace::ProductSpace<f64>;
pub type Configuration = cspace::Configuration<f64>;
pub type QuotientDecomposition = cspace::QuotientDecomposition<f64>;
pub type RobotModel = scene::RobotModel<f64>;
pub type NestedRobotSequence = scene::NestedRobotSequence<f64>;
pub type PlanningProblem = scene::PlanningProblem<f64>;
pub type Roadmap = roadmap::Roadmap<f64>;
pub type PathResult = roadmap::PathResult<f64>;
pub type QuotientRoadmap = qmp::QuotientRoadmap<f64>;
pub type HeuristicsConfig = qmp::HeuristicsConfig<f64>;
pub type PlannerParams = roadmap::PlannerParams<f64>;
