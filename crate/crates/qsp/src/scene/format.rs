//! Scene file format: a versioned TOML document with sections
//! `[environment]`, `[[robots]]`, `[nesting]`, `[bounds]`, `[query]`, and
//! `[planner]`. Angles are radians; all numbers are plain decimals.
//!
//! Loading runs every model validator; saving a loaded scene reproduces the
//! data model exactly, and `save(load(save(p)))` is byte-identical to
//! `save(p)`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BodyVolume, ConvexShape, Point2, Pose2};
use crate::scene::{
    LinkSpec, NestedRobotSequence, PlannerDefaults, PlanningProblem, RobotKind, RobotModel,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneSchema {
    schema: u32,
    name: String,
    environment: EnvironmentSchema,
    robots: Vec<RobotSchema>,
    nesting: NestingSchema,
    bounds: BoundsSchema,
    query: QuerySchema,
    #[serde(default, skip_serializing_if = "PlannerSchema::is_empty")]
    planner: PlannerSchema,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentSchema {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    polygons: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    discs: Vec<DiscSchema>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscSchema {
    center: [f64; 2],
    radius: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RobotSchema {
    name: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotates: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    parts: Vec<PartSchema>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    links: Vec<LinkSchema>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartSchema {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pose: Option<[f64; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkSchema {
    length: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    limits: Option<[f64; 2]>,
    shape: PartSchema,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NestingSchema {
    order: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsSchema {
    x: [f64; 2],
    y: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuerySchema {
    start: Vec<f64>,
    goal: Vec<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlannerSchema {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r_neighbors: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    resolution: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bias: Option<f64>,
}

impl PlannerSchema {
    fn is_empty(&self) -> bool {
        self.weights.is_none()
            && self.r_neighbors.is_none()
            && self.resolution.is_none()
            && self.eps.is_none()
            && self.delta.is_none()
            && self.bias.is_none()
    }
}

/// Loads and validates a scene file.
pub fn load_scene(path: impl AsRef<Path>) -> Result<PlanningProblem<f64>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    load_scene_str(&text, &path.display().to_string())
}

/// Parses scene text; `label` names the source in diagnostics.
pub fn load_scene_str(text: &str, label: &str) -> Result<PlanningProblem<f64>> {
    let schema: SceneSchema = toml::from_str(text).map_err(|e| Error::Parse {
        path: label.to_string(),
        message: e.to_string(),
    })?;
    schema_to_problem(schema)
}

/// Serializes a problem back into scene-file text.
pub fn scene_to_string(problem: &PlanningProblem<f64>) -> Result<String> {
    let schema = problem_to_schema(problem);
    toml::to_string_pretty(&schema).map_err(|e| Error::Validation(e.to_string()))
}

pub fn save_scene(problem: &PlanningProblem<f64>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, scene_to_string(problem)?)?;
    Ok(())
}

fn schema_to_problem(schema: SceneSchema) -> Result<PlanningProblem<f64>> {
    if schema.schema != 1 {
        return Err(Error::Validation(format!(
            "unsupported schema version {}, this build reads version 1",
            schema.schema
        )));
    }

    let mut env_parts = Vec::new();
    for (i, poly) in schema.environment.polygons.iter().enumerate() {
        let shape = polygon_from(poly)
            .map_err(|e| Error::Validation(format!("environment polygon {i}: {e}")))?;
        env_parts.push((shape, Pose2::identity()));
    }
    for (i, disc) in schema.environment.discs.iter().enumerate() {
        let shape = ConvexShape::disc(Point2::new(disc.center[0], disc.center[1]), disc.radius)
            .map_err(|e| Error::Validation(format!("environment disc {i}: {e}")))?;
        env_parts.push((shape, Pose2::identity()));
    }
    let environment = if env_parts.is_empty() {
        BodyVolume::empty()
    } else {
        BodyVolume::new(env_parts)?
    };

    let mut robots = Vec::new();
    for name in &schema.nesting.order {
        let r = schema
            .robots
            .iter()
            .find(|r| &r.name == name)
            .ok_or_else(|| {
                Error::Validation(format!("nesting references unknown robot '{name}'"))
            })?;
        robots.push(robot_from(r)?);
    }
    if robots.is_empty() {
        return Err(Error::Validation("nesting order is empty".to_string()));
    }

    let x = (schema.bounds.x[0], schema.bounds.x[1]);
    let y = (schema.bounds.y[0], schema.bounds.y[1]);
    let sequence =
        NestedRobotSequence::new(robots, x, y, schema.planner.weights.as_deref())?;

    let full = sequence.decomposition().level(sequence.depth());
    let q_start = full
        .configuration(schema.query.start.clone())
        .map_err(|e| Error::Validation(format!("query start: {e}")))?;
    let q_goal = full
        .configuration(schema.query.goal.clone())
        .map_err(|e| Error::Validation(format!("query goal: {e}")))?;

    let defaults = PlannerDefaults {
        r_neighbors: schema.planner.r_neighbors,
        resolution: schema.planner.resolution,
        thicken_eps: schema.planner.eps,
        inflate_delta: schema.planner.delta,
        bias_p0: schema.planner.bias,
    };

    PlanningProblem::new(
        schema.name,
        environment,
        sequence,
        q_start,
        q_goal,
        defaults,
    )
}

fn polygon_from(poly: &[[f64; 2]]) -> Result<ConvexShape<f64>> {
    ConvexShape::polygon(poly.iter().map(|&[x, y]| Point2::new(x, y)).collect())
}

fn shape_from(part: &PartSchema, what: &str) -> Result<(ConvexShape<f64>, Pose2<f64>)> {
    let pose = match part.pose {
        Some([x, y, t]) => Pose2::new(x, y, t),
        None => Pose2::identity(),
    };
    let shape = match part.kind.as_str() {
        "polygon" => {
            let verts = part.vertices.as_ref().ok_or_else(|| {
                Error::Validation(format!("{what}: polygon needs a 'vertices' list"))
            })?;
            polygon_from(verts).map_err(|e| Error::Validation(format!("{what}: {e}")))?
        }
        "disc" => {
            let center = part
                .center
                .ok_or_else(|| Error::Validation(format!("{what}: disc needs a 'center'")))?;
            let radius = part
                .radius
                .ok_or_else(|| Error::Validation(format!("{what}: disc needs a 'radius'")))?;
            ConvexShape::disc(Point2::new(center[0], center[1]), radius)
                .map_err(|e| Error::Validation(format!("{what}: {e}")))?
        }
        other => {
            return Err(Error::Validation(format!(
                "{what}: unknown shape kind '{other}' (expected 'polygon' or 'disc')"
            )))
        }
    };
    Ok((shape, pose))
}

fn robot_from(r: &RobotSchema) -> Result<RobotModel<f64>> {
    let kind = match r.kind.as_str() {
        "free_floating" => {
            if r.parts.is_empty() {
                return Err(Error::Validation(format!(
                    "robot '{}': free-floating robots need at least one part",
                    r.name
                )));
            }
            let mut parts = Vec::new();
            for (i, p) in r.parts.iter().enumerate() {
                parts.push(shape_from(p, &format!("robot '{}' part {i}", r.name))?);
            }
            RobotKind::FreeFloating {
                parts,
                rotates: r.rotates.unwrap_or(false),
            }
        }
        "fixed_base" => {
            let base = r.base.ok_or_else(|| {
                Error::Validation(format!("robot '{}': fixed_base needs a 'base' pose", r.name))
            })?;
            if r.links.is_empty() {
                return Err(Error::Validation(format!(
                    "robot '{}': fixed-base robots need at least one link",
                    r.name
                )));
            }
            let mut links = Vec::new();
            for (i, l) in r.links.iter().enumerate() {
                let (shape, _) =
                    shape_from(&l.shape, &format!("robot '{}' link {i}", r.name))?;
                let limits = match l.limits {
                    Some([lo, hi]) => {
                        if lo >= hi {
                            return Err(Error::Validation(format!(
                                "robot '{}' link {i}: joint limits need lower < upper",
                                r.name
                            )));
                        }
                        Some((lo, hi))
                    }
                    None => None,
                };
                if l.length <= 0.0 {
                    return Err(Error::Validation(format!(
                        "robot '{}' link {i}: length must be positive",
                        r.name
                    )));
                }
                links.push(LinkSpec {
                    shape,
                    length: l.length,
                    limits,
                });
            }
            RobotKind::FixedBase {
                base: Pose2::new(base[0], base[1], base[2]),
                links,
            }
        }
        other => {
            return Err(Error::Validation(format!(
                "robot '{}': unknown kind '{other}' (expected 'free_floating' or 'fixed_base')",
                r.name
            )))
        }
    };
    Ok(RobotModel {
        name: r.name.clone(),
        kind,
    })
}

fn problem_to_schema(p: &PlanningProblem<f64>) -> SceneSchema {
    let mut polygons = Vec::new();
    let mut discs = Vec::new();
    for (shape, pose) in p.environment.parts() {
        // Environment shapes are stored in world frame; bake any pose.
        match shape {
            ConvexShape::Polygon { vertices } => polygons.push(
                vertices
                    .iter()
                    .map(|&v| {
                        let w = pose.apply(v);
                        [w.x, w.y]
                    })
                    .collect(),
            ),
            ConvexShape::Disc { center, radius } => {
                let w = pose.apply(*center);
                discs.push(DiscSchema {
                    center: [w.x, w.y],
                    radius: *radius,
                });
            }
        }
    }

    let robots = p.sequence.robots().iter().map(robot_to_schema).collect();
    let order = p
        .sequence
        .robots()
        .iter()
        .map(|r| r.name.clone())
        .collect();

    let full = p.space(p.depth());
    let x = p.sequence.workspace_x();
    let y = p.sequence.workspace_y();

    SceneSchema {
        schema: 1,
        name: p.name.clone(),
        environment: EnvironmentSchema { polygons, discs },
        robots,
        nesting: NestingSchema { order },
        bounds: BoundsSchema {
            x: [x.0, x.1],
            y: [y.0, y.1],
        },
        query: QuerySchema {
            start: p.q_start.values().to_vec(),
            goal: p.q_goal.values().to_vec(),
        },
        planner: PlannerSchema {
            weights: weights_if_nontrivial(full),
            r_neighbors: p.defaults.r_neighbors,
            resolution: p.defaults.resolution,
            eps: p.defaults.thicken_eps,
            delta: p.defaults.inflate_delta,
            bias: p.defaults.bias_p0,
        },
    }
}

fn weights_if_nontrivial(space: &crate::cspace::ProductSpace<f64>) -> Option<Vec<f64>> {
    if space.weights().iter().all(|&w| w == 1.0) {
        None
    } else {
        Some(space.weights().to_vec())
    }
}

fn robot_to_schema(r: &RobotModel<f64>) -> RobotSchema {
    match &r.kind {
        RobotKind::FreeFloating { parts, rotates } => RobotSchema {
            name: r.name.clone(),
            kind: "free_floating".to_string(),
            rotates: Some(*rotates),
            base: None,
            parts: parts.iter().map(|(s, pose)| part_to_schema(s, Some(*pose))).collect(),
            links: Vec::new(),
        },
        RobotKind::FixedBase { base, links } => RobotSchema {
            name: r.name.clone(),
            kind: "fixed_base".to_string(),
            rotates: None,
            base: Some([base.x, base.y, base.theta]),
            parts: Vec::new(),
            links: links
                .iter()
                .map(|l| LinkSchema {
                    length: l.length,
                    limits: l.limits.map(|(lo, hi)| [lo, hi]),
                    shape: part_to_schema(&l.shape, None),
                })
                .collect(),
        },
    }
}

fn part_to_schema(shape: &ConvexShape<f64>, pose: Option<Pose2<f64>>) -> PartSchema {
    let pose = pose.filter(|p| *p != Pose2::identity()).map(|p| [p.x, p.y, p.theta]);
    match shape {
        ConvexShape::Polygon { vertices } => PartSchema {
            kind: "polygon".to_string(),
            vertices: Some(vertices.iter().map(|v| [v.x, v.y]).collect()),
            center: None,
            radius: None,
            pose,
        },
        ConvexShape::Disc { center, radius } => PartSchema {
            kind: "disc".to_string(),
            vertices: None,
            center: Some([center.x, center.y]),
            radius: Some(*radius),
            pose,
        },
    }
}
