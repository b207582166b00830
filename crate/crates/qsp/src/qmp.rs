//! The quotient-space roadmap planner.
//!
//! One roadmap is grown per quotient level. Level k samples its base point
//! from the level k-1 graph (random vertex, then a uniform point along a
//! uniform incident edge) and its fiber coordinates uniformly, measures
//! distance as graph distance on the parent plus fiber distance, and
//! connects along parent-graph paths, emitting a waypoint at every parent
//! vertex crossed. A priority queue keyed by per-level sampling density
//! decides which graph grows next; the next level is appended once the
//! level below has a solution. For a single level the planner reduces
//! exactly to PRM.

use std::time::Instant;

use rand::Rng;

use crate::cspace::{Configuration, Coord, ProductSpace};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::roadmap::{connect_straight, grow_prm, PathResult, PlannerParams, Ptc, Roadmap};
use crate::scene::PlanningProblem;

/// A point on (or mapped onto) a parent roadmap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphPoint<S> {
    Vertex(usize),
    /// Point along `edge` at parameter `t`, measured from the edge's `u`.
    OnEdge { edge: usize, t: S },
}

/// Where a level-k vertex's base coordinates sit relative to the parent
/// graph: the nearest graph point and the metric offset to it (zero when
/// the base lies on the graph, the common case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseAnchor<S> {
    pub point: GraphPoint<S>,
    pub offset: S,
}

/// The three runtime heuristics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicsConfig<S> {
    /// Heuristic 1: bias base sampling toward the parent solution path with
    /// probability `p(n) = p0 * n0 / (n0 + n)`, where `n` counts the draws
    /// taken from the path so far.
    pub bias_enabled: bool,
    pub bias_p0: S,
    pub bias_n0: u64,
    /// Heuristic 2: offset graph-drawn bases uniformly within a metric
    /// ball of radius `eps`.
    pub thicken_enabled: bool,
    pub thicken_eps: S,
    /// Heuristic 3: inflate nested free-floating robot shapes before
    /// planning. Trades completeness for clearance; off by default.
    pub inflate_enabled: bool,
    pub inflate_delta: S,
}

impl<S: Real> Default for HeuristicsConfig<S> {
    fn default() -> Self {
        HeuristicsConfig {
            bias_enabled: true,
            bias_p0: S::from_f64(0.8),
            bias_n0: 100,
            thicken_enabled: true,
            thicken_eps: S::from_f64(0.01),
            inflate_enabled: false,
            inflate_delta: S::from_f64(1.2),
        }
    }
}

impl<S: Real> HeuristicsConfig<S> {
    /// Defaults with the thickening radius used for fixed-base robots.
    pub fn fixed_base_defaults() -> Self {
        HeuristicsConfig {
            thicken_eps: S::from_f64(0.1),
            ..Default::default()
        }
    }

    /// Every heuristic disabled.
    pub fn none() -> Self {
        HeuristicsConfig {
            bias_enabled: false,
            thicken_enabled: false,
            inflate_enabled: false,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bias_p0 < S::zero() || self.bias_p0 > S::one() {
            return Err(Error::InvalidParameter(format!(
                "path bias probability must lie in [0, 1], got {}",
                self.bias_p0
            )));
        }
        if self.thicken_eps < S::zero() {
            return Err(Error::InvalidParameter(format!(
                "thickening radius must be non-negative, got {}",
                self.thicken_eps
            )));
        }
        if self.inflate_delta <= S::zero() {
            return Err(Error::InvalidParameter(format!(
                "inflation factor must be positive, got {}",
                self.inflate_delta
            )));
        }
        Ok(())
    }
}

/// Per-level planner state: the quotient-space roadmap tuple.
#[derive(Debug, Clone)]
pub struct QuotientRoadmap<S> {
    level: usize,
    q_start: Configuration<S>,
    q_goal: Configuration<S>,
    start_idx: usize,
    goal_idx: usize,
    fiber: ProductSpace<S>,
    graph: Roadmap<S>,
    solution: Option<PathResult<S>>,
    /// Maintained density: vertices per (fiber measure x parent length).
    density: S,
    density_history: Vec<S>,
    attempts: u64,
    bias_draws: u64,
    base_dim: usize,
    /// Parent-graph anchor per vertex; empty at the first level.
    anchors: Vec<BaseAnchor<S>>,
}

impl<S: Real> QuotientRoadmap<S> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn space(&self) -> &ProductSpace<S> {
        self.graph.space()
    }

    pub fn fiber(&self) -> &ProductSpace<S> {
        &self.fiber
    }

    pub fn graph(&self) -> &Roadmap<S> {
        &self.graph
    }

    pub fn q_start(&self) -> &Configuration<S> {
        &self.q_start
    }

    pub fn q_goal(&self) -> &Configuration<S> {
        &self.q_goal
    }

    pub fn start_idx(&self) -> usize {
        self.start_idx
    }

    pub fn goal_idx(&self) -> usize {
        self.goal_idx
    }

    pub fn solution(&self) -> Option<&PathResult<S>> {
        self.solution.as_ref()
    }

    pub fn density(&self) -> S {
        self.density
    }

    pub fn density_history(&self) -> &[S] {
        &self.density_history
    }

    pub fn attempts(&self) -> u64 {
        self.attempts
    }

    pub fn anchors(&self) -> &[BaseAnchor<S>] {
        &self.anchors
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }
}

/// Random-Vertex-Edge sampling: a uniform vertex; if it has incident edges,
/// a uniform point along a uniform incident edge, else the vertex itself.
pub fn sample_graph_rve<S: Real, R: Rng + ?Sized>(
    g: &Roadmap<S>,
    rng: &mut R,
) -> Result<(Configuration<S>, GraphPoint<S>)> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidState(
            "cannot sample from an empty graph".to_string(),
        ));
    }
    let v = rng.gen_range(0..g.vertex_count());
    let incident = g.incident_edges(v);
    if incident.is_empty() {
        return Ok((g.vertex(v).clone(), GraphPoint::Vertex(v)));
    }
    let e = incident[rng.gen_range(0..incident.len())];
    let t = rng.gen_range(S::zero()..S::one());
    let edge = &g.edges()[e];
    let q = g
        .space()
        .interpolate_unchecked(g.vertex(edge.u), g.vertex(edge.v), t);
    Ok((q, GraphPoint::OnEdge { edge: e, t }))
}

/// Maps a configuration onto the graph: the nearest vertex, refined by
/// projection onto every edge. Parent graphs stay small enough at this
/// scale that the exhaustive scan is cheap; restricting the projection to
/// the nearest vertex's incident edges produces badly wrong anchors for
/// off-graph (thickened) bases, which starves the planner of connections.
pub fn map_to_graph<S: Real>(g: &Roadmap<S>, q: &Configuration<S>) -> BaseAnchor<S> {
    debug_assert!(g.vertex_count() > 0);
    let mut best_v = 0usize;
    let mut best_d = S::infinity();
    for (i, v) in g.vertices().iter().enumerate() {
        let d = g.space().distance_unchecked(q, v);
        if d < best_d {
            best_d = d;
            best_v = i;
        }
    }
    let mut best = BaseAnchor {
        point: GraphPoint::Vertex(best_v),
        offset: best_d,
    };
    for (e, edge) in g.edges().iter().enumerate() {
        let (t, d) = project_onto_segment(g.space(), q, g.vertex(edge.u), g.vertex(edge.v));
        if d < best.offset {
            best = BaseAnchor {
                point: GraphPoint::OnEdge { edge: e, t },
                offset: d,
            };
        }
    }
    best
}

/// Projection parameter of `q` onto the geodesic segment `u -> v` in the
/// weighted metric, with the achieved distance.
fn project_onto_segment<S: Real>(
    space: &ProductSpace<S>,
    q: &Configuration<S>,
    u: &Configuration<S>,
    v: &Configuration<S>,
) -> (S, S) {
    use crate::real::angle_delta;
    let mut dot = S::zero();
    let mut len_sq = S::zero();
    for (((&qq, &uu), &vv), c) in q
        .values()
        .iter()
        .zip(u.values())
        .zip(v.values())
        .zip(space.coords())
    {
        let (dq, dv, w) = match c {
            Coord::Linear { weight, .. } => (qq - uu, vv - uu, *weight),
            Coord::Angle { weight } => (angle_delta(uu, qq), angle_delta(uu, vv), *weight),
        };
        let w2 = w * w;
        dot = dot + w2 * dq * dv;
        len_sq = len_sq + w2 * dv * dv;
    }
    if len_sq == S::zero() {
        return (S::zero(), space.distance_unchecked(q, u));
    }
    let t = (dot / len_sq).max(S::zero()).min(S::one());
    let p = space.interpolate_unchecked(u, v, t);
    (t, space.distance_unchecked(q, &p))
}

fn point_config<S: Real>(g: &Roadmap<S>, p: &GraphPoint<S>) -> Configuration<S> {
    match *p {
        GraphPoint::Vertex(v) => g.vertex(v).clone(),
        GraphPoint::OnEdge { edge, t } => {
            let e = &g.edges()[edge];
            g.space()
                .interpolate_unchecked(g.vertex(e.u), g.vertex(e.v), t)
        }
    }
}

/// Dijkstra source initialization for a graph point.
fn entries<S: Real>(g: &Roadmap<S>, p: &GraphPoint<S>) -> Vec<(usize, S)> {
    match *p {
        GraphPoint::Vertex(v) => vec![(v, S::zero())],
        GraphPoint::OnEdge { edge, t } => {
            let e = &g.edges()[edge];
            vec![(e.u, t * e.len), (e.v, (S::one() - t) * e.len)]
        }
    }
}

/// Along-graph distance from the Dijkstra field of one point to another
/// point, including the same-edge shortcut.
fn graph_point_distance<S: Real>(
    g: &Roadmap<S>,
    from: &GraphPoint<S>,
    dist: &[S],
    to: &GraphPoint<S>,
) -> S {
    let mut best = S::infinity();
    for (w, c) in entries(g, to) {
        let d = dist[w] + c;
        if d < best {
            best = d;
        }
    }
    if let (GraphPoint::OnEdge { edge: ea, t: ta }, GraphPoint::OnEdge { edge: eb, t: tb }) =
        (from, to)
    {
        if ea == eb {
            best = best.min((*ta - *tb).abs() * g.edges()[*ea].len);
        }
    }
    best
}

/// One leg of a base route along the parent graph.
#[derive(Debug, Clone)]
enum BaseLeg<S> {
    /// Straight off-graph leg; points on it anchor to `anchor`.
    OffGraph {
        from: Configuration<S>,
        to: Configuration<S>,
        anchor: GraphPoint<S>,
    },
    /// Along `edge` from parameter `t0` to `t1`.
    AlongEdge {
        from: Configuration<S>,
        to: Configuration<S>,
        edge: usize,
        t0: S,
        t1: S,
    },
}

impl<S: Real> BaseLeg<S> {
    fn endpoints(&self) -> (&Configuration<S>, &Configuration<S>) {
        match self {
            BaseLeg::OffGraph { from, to, .. } => (from, to),
            BaseLeg::AlongEdge { from, to, .. } => (from, to),
        }
    }
}

/// The base route between two anchored points, or `None` when the parent
/// graph does not connect them. `dist`/`parents` are a Dijkstra field
/// sourced at `to_anchor`, so predecessor chains lead toward it.
fn base_route<S: Real>(
    parent: &Roadmap<S>,
    dist: &[S],
    parents: &[Option<usize>],
    from_anchor: &BaseAnchor<S>,
    from_base: &Configuration<S>,
    to_anchor: &BaseAnchor<S>,
    to_base: &Configuration<S>,
) -> Option<Vec<BaseLeg<S>>> {
    let from_pt = point_config(parent, &from_anchor.point);
    let to_pt = point_config(parent, &to_anchor.point);

    let mut same_edge: Option<(S, S, S, usize)> = None;
    if let (GraphPoint::OnEdge { edge: ea, t: ta }, GraphPoint::OnEdge { edge: eb, t: tb }) =
        (&from_anchor.point, &to_anchor.point)
    {
        if ea == eb {
            same_edge = Some(((*ta - *tb).abs() * parent.edges()[*ea].len, *ta, *tb, *ea));
        }
    }

    let mut via: Option<(S, usize)> = None;
    for (w, c) in entries(parent, &from_anchor.point) {
        let total = dist[w] + c;
        if total.is_finite() && via.map_or(true, |(b, _)| total < b) {
            via = Some((total, w));
        }
    }

    let same_cost = same_edge.map(|(c, ..)| c).unwrap_or_else(S::infinity);
    let via_cost = via.map(|(c, _)| c).unwrap_or_else(S::infinity);
    if !same_cost.is_finite() && !via_cost.is_finite() {
        return None;
    }

    let space = parent.space();
    let mut legs: Vec<BaseLeg<S>> = Vec::new();
    let push_leg = |legs: &mut Vec<BaseLeg<S>>, leg: BaseLeg<S>| {
        let (a, b) = leg.endpoints();
        if space.distance_unchecked(a, b) > S::zero() {
            legs.push(leg);
        }
    };

    if from_anchor.offset > S::zero() {
        push_leg(
            &mut legs,
            BaseLeg::OffGraph {
                from: from_base.clone(),
                to: from_pt.clone(),
                anchor: from_anchor.point,
            },
        );
    }

    if same_cost <= via_cost {
        if let Some((_, ta, tb, e)) = same_edge {
            push_leg(
                &mut legs,
                BaseLeg::AlongEdge {
                    from: from_pt.clone(),
                    to: to_pt.clone(),
                    edge: e,
                    t0: ta,
                    t1: tb,
                },
            );
        }
    } else if let Some((_, entry)) = via {
        if let GraphPoint::OnEdge { edge, t } = from_anchor.point {
            let e = &parent.edges()[edge];
            let t1 = if entry == e.u { S::zero() } else { S::one() };
            push_leg(
                &mut legs,
                BaseLeg::AlongEdge {
                    from: from_pt.clone(),
                    to: parent.vertex(entry).clone(),
                    edge,
                    t0: t,
                    t1,
                },
            );
        }
        let mut chain = vec![entry];
        let mut cur = entry;
        while let Some(p) = parents[cur] {
            chain.push(p);
            cur = p;
        }
        for pair in chain.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let e = parent
                .incident_edges(a)
                .iter()
                .copied()
                .find(|&e| {
                    let edge = &parent.edges()[e];
                    edge.u == b || edge.v == b
                })
                .expect("dijkstra chains follow existing edges");
            let edge = &parent.edges()[e];
            let (t0, t1) = if edge.u == a {
                (S::zero(), S::one())
            } else {
                (S::one(), S::zero())
            };
            push_leg(
                &mut legs,
                BaseLeg::AlongEdge {
                    from: parent.vertex(a).clone(),
                    to: parent.vertex(b).clone(),
                    edge: e,
                    t0,
                    t1,
                },
            );
        }
        let last = *chain.last().unwrap();
        if let GraphPoint::OnEdge { edge, t } = to_anchor.point {
            let e = &parent.edges()[edge];
            if last == e.u || last == e.v {
                let t0 = if last == e.u { S::zero() } else { S::one() };
                push_leg(
                    &mut legs,
                    BaseLeg::AlongEdge {
                        from: parent.vertex(last).clone(),
                        to: to_pt.clone(),
                        edge,
                        t0,
                        t1: t,
                    },
                );
            }
        }
    }

    if to_anchor.offset > S::zero() {
        push_leg(
            &mut legs,
            BaseLeg::OffGraph {
                from: to_pt,
                to: to_base.clone(),
                anchor: to_anchor.point,
            },
        );
    }
    Some(legs)
}

/// What one growth iteration did at one level.
#[derive(Debug, Clone, Default)]
pub struct QmpGrowthReport {
    pub level: usize,
    pub accepted: bool,
    pub new_vertices: usize,
    pub new_edges: usize,
    pub from_path_bias: bool,
}

/// Completed run: the final answer plus every level's roadmap.
#[derive(Debug, Clone)]
pub struct QmpRun<S> {
    pub result: PathResult<S>,
    pub levels: Vec<QuotientRoadmap<S>>,
    pub iterations: u64,
}

/// The planner; drive it with [`QmpPlanner::step`] or use [`plan_qmp`].
pub struct QmpPlanner<S: Real> {
    problem: PlanningProblem<S>,
    heuristics: HeuristicsConfig<S>,
    params: PlannerParams<S>,
    pairs: Vec<(Configuration<S>, Configuration<S>)>,
    levels: Vec<QuotientRoadmap<S>>,
    resolution: S,
    /// Floor for the parent-length factor in density denominators.
    length_floor: S,
    iterations: u64,
}

impl<S: Real> QmpPlanner<S> {
    pub fn new(
        problem: &PlanningProblem<S>,
        heuristics: HeuristicsConfig<S>,
        params: PlannerParams<S>,
    ) -> Result<Self> {
        heuristics.validate()?;
        let problem = if heuristics.inflate_enabled {
            problem.inflated(heuristics.inflate_delta)?
        } else {
            problem.clone()
        };
        let pairs = problem.project_problem()?;
        let full = problem.space(problem.depth());
        let resolution = params.resolution_for(full);
        let length_floor = S::from_f64(1e-6) * full.diagonal();
        let mut planner = QmpPlanner {
            problem,
            heuristics,
            params,
            pairs,
            levels: Vec::new(),
            resolution,
            length_floor,
            iterations: 0,
        };
        planner.push_level()?;
        planner.advance()?;
        Ok(planner)
    }

    pub fn levels(&self) -> &[QuotientRoadmap<S>] {
        &self.levels
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn depth(&self) -> usize {
        self.problem.depth()
    }

    pub fn resolution(&self) -> S {
        self.resolution
    }

    /// True once the top level has a solution.
    pub fn solved(&self) -> bool {
        self.levels.len() == self.depth() && self.levels.last().unwrap().solution.is_some()
    }

    pub fn result(&self) -> PathResult<S> {
        if self.levels.len() == self.depth() {
            if let Some(p) = &self.levels.last().unwrap().solution {
                return p.clone();
            }
        }
        PathResult::unsolved()
    }

    pub fn into_run(self) -> QmpRun<S> {
        QmpRun {
            result: self.result(),
            iterations: self.iterations,
            levels: self.levels,
        }
    }

    /// Initializes the next level, seeded with its projected start/goal.
    fn push_level(&mut self) -> Result<()> {
        let k = self.levels.len() + 1;
        let d = self.problem.sequence.decomposition();
        let space = d.level(k).clone();
        let fiber = d.fiber(k).clone();
        let base_dim = if k > 1 { d.level(k - 1).dim() } else { 0 };
        let (q_start, q_goal) = self.pairs[k - 1].clone();
        let mut graph = Roadmap::new(space);
        let start_idx = graph.add_vertex(q_start.clone());
        let goal_idx = if q_goal == q_start {
            start_idx
        } else {
            graph.add_vertex(q_goal.clone())
        };
        let mut anchors = Vec::new();
        if k > 1 {
            let parent = &self.levels[k - 2].graph;
            let anchor_of = |cfg: &Configuration<S>| {
                let base = cfg.prefix(base_dim);
                match parent.find_vertex(&base) {
                    Some(v) => BaseAnchor {
                        point: GraphPoint::Vertex(v),
                        offset: S::zero(),
                    },
                    None => map_to_graph(parent, &base),
                }
            };
            anchors.push(anchor_of(&q_start));
            if goal_idx != start_idx {
                anchors.push(anchor_of(&q_goal));
            }
        }
        let mut level = QuotientRoadmap {
            level: k,
            q_start: q_start.clone(),
            q_goal: q_goal.clone(),
            start_idx,
            goal_idx,
            fiber,
            graph,
            solution: None,
            density: S::zero(),
            density_history: Vec::new(),
            attempts: 0,
            bias_draws: 0,
            base_dim,
            anchors,
        };
        // The seeds may already see each other; try the level's connect.
        if start_idx != goal_idx {
            if k == 1 {
                let validity = self.problem.validity_fn(1);
                let q_new = connect_straight(
                    level.graph.space(),
                    &validity,
                    &q_start,
                    &q_goal,
                    self.resolution,
                );
                if q_new == q_goal {
                    level.graph.add_edge(start_idx, goal_idx);
                }
            } else {
                let parent = &self.levels[k - 2].graph;
                let (dist, parents) =
                    parent.dijkstra(&entries(parent, &level.anchors[goal_idx].point));
                connect_into_level(
                    &self.problem,
                    parent,
                    &mut level,
                    start_idx,
                    goal_idx,
                    &dist,
                    &parents,
                    self.resolution,
                );
            }
        }
        if level.graph.connected(level.start_idx, level.goal_idx) {
            level.solution =
                Some(level.graph.shortest_path_idx(level.start_idx, level.goal_idx));
        }
        self.levels.push(level);
        Ok(())
    }

    /// Appends levels while the deepest one is solved.
    fn advance(&mut self) -> Result<()> {
        while self.levels.len() < self.depth() && self.levels.last().unwrap().solution.is_some()
        {
            log::debug!(
                "level {} solved, initializing level {}",
                self.levels.len(),
                self.levels.len() + 1
            );
            self.push_level()?;
        }
        Ok(())
    }

    /// Scheduling key: attempts per unit of (fiber measure x parent graph
    /// length). Strictly increases for the grown level, so no live level
    /// starves even when all its samples are rejected.
    pub fn priority_key(&self, idx: usize) -> S {
        S::from_f64(self.levels[idx].attempts as f64) / self.density_denominator(idx)
    }

    fn density_denominator(&self, idx: usize) -> S {
        let parent_len = if idx == 0 {
            S::one()
        } else {
            self.levels[idx - 1]
                .graph
                .total_edge_length()
                .max(self.length_floor)
        };
        self.levels[idx].fiber.measure() * parent_len
    }

    /// Maintained density of a level from the incremental counters.
    fn density_of(&self, idx: usize) -> S {
        S::from_usize(self.levels[idx].graph.vertex_count()) / self.density_denominator(idx)
    }

    /// Density recomputed from scratch (edge lengths re-summed).
    pub fn density_from_scratch(&self, idx: usize) -> S {
        let parent_len = if idx == 0 {
            S::one()
        } else {
            self.levels[idx - 1]
                .graph
                .recompute_total_edge_length()
                .max(self.length_floor)
        };
        S::from_usize(self.levels[idx].graph.vertices().len())
            / (self.levels[idx].fiber.measure() * parent_len)
    }

    /// One planner iteration: pop the least-dense level, grow it, and check
    /// the current level for a solution.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<QmpGrowthReport> {
        if self.solved() {
            return Err(Error::InvalidState(
                "planner already has a solution".to_string(),
            ));
        }
        let mut pick = 0usize;
        let mut best = self.priority_key(0);
        for idx in 1..self.levels.len() {
            let key = self.priority_key(idx);
            if key < best {
                best = key;
                pick = idx;
            }
        }
        let report = self.grow_level(pick, rng)?;
        self.iterations += 1;

        let current = self.levels.len() - 1;
        if self.levels[current].solution.is_none() {
            let (s, g) = (
                self.levels[current].start_idx,
                self.levels[current].goal_idx,
            );
            if self.levels[current].graph.connected(s, g) {
                self.levels[current].solution =
                    Some(self.levels[current].graph.shortest_path_idx(s, g));
            }
        }
        self.advance()?;

        // Refresh maintained densities; parent growth shifts children too.
        for idx in 0..self.levels.len() {
            self.levels[idx].density = self.density_of(idx);
        }
        let d = self.levels[pick].density;
        self.levels[pick].density_history.push(d);
        Ok(report)
    }

    fn grow_level<R: Rng + ?Sized>(&mut self, idx: usize, rng: &mut R) -> Result<QmpGrowthReport> {
        let k = idx + 1;
        let mut report = QmpGrowthReport {
            level: k,
            ..Default::default()
        };
        self.levels[idx].attempts += 1;

        if k == 1 {
            let validity = self.problem.validity_fn(1);
            let lvl = &mut self.levels[idx];
            let r = grow_prm(
                &mut lvl.graph,
                &validity,
                rng,
                self.params.r_neighbors,
                self.resolution,
            );
            report.accepted = r.accepted;
            report.new_vertices = r.new_vertices.len();
            report.new_edges = r.new_edges.len();
            return Ok(report);
        }

        let (q_rand, anchor, from_bias) = {
            let (lo, hi) = self.levels.split_at_mut(idx);
            let parent = &lo[idx - 1];
            let lvl = &mut hi[0];
            sample_level_inner(parent, lvl, &self.heuristics, rng)?
        };
        report.from_path_bias = from_bias;
        let valid = {
            let validity = self.problem.validity_fn(k);
            validity(&q_rand)
        };
        if !valid {
            return Ok(report);
        }
        report.accepted = true;

        let (lo, hi) = self.levels.split_at_mut(idx);
        let parent = &lo[idx - 1].graph;
        let lvl = &mut hi[0];
        let v_rand = lvl.graph.add_vertex(q_rand.clone());
        lvl.anchors.push(anchor);
        report.new_vertices += 1;

        // One Dijkstra field from the new sample's anchor serves both the
        // R-nearest query and every connection attempt.
        let (dist, parents) = parent.dijkstra(&entries(parent, &anchor.point));

        let fiber_rand = q_rand.suffix(lvl.base_dim);
        let mut scored: Vec<(S, usize)> = Vec::with_capacity(v_rand);
        for i in 0..v_rand {
            let graph_d = graph_point_distance(parent, &anchor.point, &dist, &lvl.anchors[i].point);
            if !graph_d.is_finite() {
                continue;
            }
            let fiber_i = lvl.graph.vertex(i).suffix(lvl.base_dim);
            let m = graph_d
                + lvl.anchors[i].offset
                + anchor.offset
                + lvl.fiber.distance_unchecked(&fiber_i, &fiber_rand);
            scored.push((m, i));
        }
        scored.sort_by(|a, b| a.partial_cmp(b).expect("metric values are comparable"));
        scored.truncate(self.params.r_neighbors);

        for (_, near) in scored {
            let (added_v, added_e) = connect_into_level(
                &self.problem,
                parent,
                lvl,
                near,
                v_rand,
                &dist,
                &parents,
                self.resolution,
            );
            report.new_vertices += added_v;
            report.new_edges += added_e;
        }
        Ok(report)
    }

    /// Graph metric between two level-k configurations, mapping both bases
    /// onto the parent graph. Infinite when the parent graph does not
    /// connect the mapped points.
    pub fn graph_metric(&self, k: usize, a: &Configuration<S>, b: &Configuration<S>) -> Result<S> {
        if k < 2 || k > self.levels.len() {
            return Err(Error::InvalidLevel {
                level: k,
                reason: "graph metric needs an initialized level above the first".to_string(),
            });
        }
        let lvl = &self.levels[k - 1];
        Ok(graph_metric(
            &self.levels[k - 2].graph,
            &lvl.fiber,
            lvl.base_dim,
            a,
            b,
        ))
    }
}

/// Graph distance on the parent roadmap between the mapped base points plus
/// mapping offsets, plus the fiber-coordinate distance. Infinite when the
/// parent graph does not connect the mapped points.
pub fn graph_metric<S: Real>(
    parent: &Roadmap<S>,
    fiber: &ProductSpace<S>,
    base_dim: usize,
    a: &Configuration<S>,
    b: &Configuration<S>,
) -> S {
    let anchor_a = map_to_graph(parent, &a.prefix(base_dim));
    let anchor_b = map_to_graph(parent, &b.prefix(base_dim));
    let (dist, _) = parent.dijkstra(&entries(parent, &anchor_b.point));
    let graph_d = graph_point_distance(parent, &anchor_b.point, &dist, &anchor_a.point);
    if !graph_d.is_finite() {
        return S::infinity();
    }
    graph_d
        + anchor_a.offset
        + anchor_b.offset
        + fiber.distance_unchecked(&a.suffix(base_dim), &b.suffix(base_dim))
}

/// Base sampling for a level above the first: path-biased or RVE base,
/// optional thickening offset, uniform fiber.
fn sample_level_inner<S: Real, R: Rng + ?Sized>(
    parent: &QuotientRoadmap<S>,
    lvl: &mut QuotientRoadmap<S>,
    h: &HeuristicsConfig<S>,
    rng: &mut R,
) -> Result<(Configuration<S>, BaseAnchor<S>, bool)> {
    let parent_graph = &parent.graph;
    let mut from_bias = false;
    let (mut base, mut anchor) = {
        let use_bias = h.bias_enabled
            && parent.solution.is_some()
            && rng.gen_range(S::zero()..S::one()) < bias_probability(h, lvl.bias_draws);
        if use_bias {
            from_bias = true;
            lvl.bias_draws += 1;
            sample_along_path(parent_graph, parent.solution.as_ref().unwrap(), rng)
        } else {
            let (cfg, point) = sample_graph_rve(parent_graph, rng)?;
            (
                cfg,
                BaseAnchor {
                    point,
                    offset: S::zero(),
                },
            )
        }
    };
    if h.thicken_enabled && h.thicken_eps > S::zero() {
        base = offset_in_ball(parent_graph.space(), &base, h.thicken_eps, rng);
        anchor = map_to_graph(parent_graph, &base);
    }
    let fiber_cfg = lvl.fiber.sample_uniform(rng);
    Ok((base.concat(&fiber_cfg), anchor, from_bias))
}

fn bias_probability<S: Real>(h: &HeuristicsConfig<S>, draws: u64) -> S {
    let n0 = S::from_f64(h.bias_n0 as f64);
    h.bias_p0 * n0 / (n0 + S::from_f64(draws as f64))
}

/// Uniform point along a solution path (a chain of graph edges).
fn sample_along_path<S: Real, R: Rng + ?Sized>(
    g: &Roadmap<S>,
    path: &PathResult<S>,
    rng: &mut R,
) -> (Configuration<S>, BaseAnchor<S>) {
    if path.vertex_ids.len() < 2 || path.length == S::zero() {
        let v = path.vertex_ids[0];
        return (
            g.vertex(v).clone(),
            BaseAnchor {
                point: GraphPoint::Vertex(v),
                offset: S::zero(),
            },
        );
    }
    let target = rng.gen_range(S::zero()..S::one()) * path.length;
    let segments = path.vertex_ids.len() - 1;
    let mut acc = S::zero();
    for (i, pair) in path.vertex_ids.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        let e = g
            .incident_edges(a)
            .iter()
            .copied()
            .find(|&e| {
                let edge = &g.edges()[e];
                edge.u == b || edge.v == b
            })
            .expect("solution paths follow roadmap edges");
        let edge = &g.edges()[e];
        if acc + edge.len >= target || i + 1 == segments {
            let f = if edge.len > S::zero() {
                ((target - acc) / edge.len).max(S::zero()).min(S::one())
            } else {
                S::zero()
            };
            let t = if edge.u == a { f } else { S::one() - f };
            let cfg = g
                .space()
                .interpolate_unchecked(g.vertex(edge.u), g.vertex(edge.v), t);
            return (
                cfg,
                BaseAnchor {
                    point: GraphPoint::OnEdge { edge: e, t },
                    offset: S::zero(),
                },
            );
        }
        acc = acc + edge.len;
    }
    unreachable!("target length lies within the path length");
}

/// Uniform offset within a metric ball of radius `eps`; linear coordinates
/// clamp to their bounds, angles renormalize.
fn offset_in_ball<S: Real, R: Rng + ?Sized>(
    space: &ProductSpace<S>,
    q: &Configuration<S>,
    eps: S,
    rng: &mut R,
) -> Configuration<S> {
    use crate::real::normalize_angle;
    let dim = space.dim();
    // Direction from Gaussian components (Box-Muller), radius by the
    // d-ball inverse CDF.
    let mut dir = Vec::with_capacity(dim);
    let mut norm_sq = S::zero();
    let mut i = 0;
    while i < dim {
        let u1 = S::one() - rng.gen_range(S::zero()..S::one());
        let u2 = rng.gen_range(S::zero()..S::one());
        let r = (-(S::from_f64(2.0)) * u1.ln()).sqrt();
        let (s, c) = (S::TAU() * u2).sin_cos();
        for g in [r * c, r * s] {
            if i < dim {
                dir.push(g);
                norm_sq = norm_sq + g * g;
                i += 1;
            }
        }
    }
    let norm = norm_sq.sqrt();
    if norm == S::zero() {
        return q.clone();
    }
    let radius = eps
        * rng
            .gen_range(S::zero()..S::one())
            .powf(S::one() / S::from_usize(dim));
    let values = q
        .values()
        .iter()
        .zip(&dir)
        .zip(space.coords())
        .map(|((&v, &d), c)| {
            let step = radius * d / norm;
            match c {
                Coord::Linear { lo, hi, weight } => (v + step / *weight).max(*lo).min(*hi),
                Coord::Angle { weight } => normalize_angle(v + step / *weight),
            }
        })
        .collect();
    Configuration::from_values(values)
}

/// Connects vertex `near` toward vertex `target` along the parent graph,
/// adding a waypoint vertex wherever a parent vertex is crossed and one
/// edge per PL segment, truncating at the last valid configuration.
/// Returns `(vertices added, edges added)`.
#[allow(clippy::too_many_arguments)]
fn connect_into_level<S: Real>(
    problem: &PlanningProblem<S>,
    parent: &Roadmap<S>,
    lvl: &mut QuotientRoadmap<S>,
    near: usize,
    target: usize,
    dist: &[S],
    parents: &[Option<usize>],
    resolution: S,
) -> (usize, usize) {
    let k = lvl.level;
    let validity = problem.validity_fn(k);
    let base_dim = lvl.base_dim;
    let near_cfg = lvl.graph.vertex(near).clone();
    let target_cfg = lvl.graph.vertex(target).clone();
    let near_base = near_cfg.prefix(base_dim);
    let target_base = target_cfg.prefix(base_dim);
    let Some(legs) = base_route(
        parent,
        dist,
        parents,
        &lvl.anchors[near],
        &near_base,
        &lvl.anchors[target],
        &target_base,
    ) else {
        return (0, 0);
    };

    let space = lvl.graph.space().clone();
    let fiber_near = near_cfg.suffix(base_dim);
    let fiber_target = target_cfg.suffix(base_dim);
    let leg_lens: Vec<S> = legs
        .iter()
        .map(|l| {
            let (a, b) = l.endpoints();
            parent.space().distance_unchecked(a, b)
        })
        .collect();
    let total: S = leg_lens.iter().fold(S::zero(), |acc, &l| acc + l);

    // PL waypoints: near, one per parent vertex crossed, target. The fiber
    // interpolates by fraction of covered base arc length. Boundaries that
    // are not parent vertices (mapped-point kinks from thickened bases) are
    // absorbed into the adjacent chord, which deviates from the base route
    // by at most the thickening radius and is validity-checked directly.
    struct Waypoint<S> {
        cfg: Configuration<S>,
        anchor: Option<BaseAnchor<S>>,
    }
    let mut waypoints: Vec<Waypoint<S>> = vec![Waypoint {
        cfg: near_cfg.clone(),
        anchor: None,
    }];
    if total > S::zero() {
        let mut acc = S::zero();
        for (i, leg) in legs.iter().enumerate() {
            acc = acc + leg_lens[i];
            let is_last = i + 1 == legs.len();
            if is_last {
                waypoints.push(Waypoint {
                    cfg: target_cfg.clone(),
                    anchor: None,
                });
                break;
            }
            let anchor = boundary_anchor(parent, leg, &legs[i + 1]);
            if !matches!(anchor.point, GraphPoint::Vertex(_)) {
                continue;
            }
            let fiber_cfg = lvl
                .fiber
                .interpolate_unchecked(&fiber_near, &fiber_target, acc / total);
            waypoints.push(Waypoint {
                cfg: leg.endpoints().1.concat(&fiber_cfg),
                anchor: Some(anchor),
            });
        }
    } else {
        // Pure fiber motion above one base point.
        waypoints.push(Waypoint {
            cfg: target_cfg.clone(),
            anchor: None,
        });
    }

    // Validity walk with truncation at the last valid configuration.
    let mut kept: Vec<(Configuration<S>, Option<BaseAnchor<S>>)> =
        vec![(waypoints[0].cfg.clone(), None)];
    'segments: for wp in waypoints.iter().skip(1) {
        let from = kept.last().unwrap().0.clone();
        let seg_len = space.distance_unchecked(&from, &wp.cfg);
        if seg_len == S::zero() {
            continue;
        }
        let steps = (seg_len / resolution).ceil().to_f64().max(1.0) as u64;
        let mut last_valid: Option<Configuration<S>> = None;
        for s in 1..=steps {
            let t = S::from_usize(s as usize) / S::from_usize(steps as usize);
            let q = space.interpolate_unchecked(&from, &wp.cfg, t);
            if !validity(&q) {
                if let Some(q_last) = last_valid {
                    let anchor = map_to_graph(parent, &q_last.prefix(base_dim));
                    kept.push((q_last, Some(anchor)));
                }
                break 'segments;
            }
            last_valid = Some(q);
        }
        kept.push((wp.cfg.clone(), wp.anchor));
    }

    let mut added_v = 0usize;
    let mut added_e = 0usize;
    let mut prev = near;
    for (cfg, anchor) in kept.into_iter().skip(1) {
        let idx = if cfg == target_cfg {
            target
        } else if cfg == near_cfg {
            near
        } else {
            let v = lvl.graph.add_vertex(cfg.clone());
            let a = anchor.unwrap_or_else(|| map_to_graph(parent, &cfg.prefix(base_dim)));
            lvl.anchors.push(a);
            added_v += 1;
            v
        };
        if lvl.graph.add_edge(prev, idx).is_some() {
            added_e += 1;
        }
        prev = idx;
    }
    (added_v, added_e)
}

/// Anchor for a leg-boundary waypoint: the shared endpoint of two legs.
fn boundary_anchor<S: Real>(
    parent: &Roadmap<S>,
    before: &BaseLeg<S>,
    after: &BaseLeg<S>,
) -> BaseAnchor<S> {
    match before {
        BaseLeg::AlongEdge { edge, t1, .. } => BaseAnchor {
            point: graph_point_at(parent, *edge, *t1),
            offset: S::zero(),
        },
        BaseLeg::OffGraph { anchor, .. } => match after {
            BaseLeg::AlongEdge { edge, t0, .. } => BaseAnchor {
                point: graph_point_at(parent, *edge, *t0),
                offset: S::zero(),
            },
            BaseLeg::OffGraph { .. } => BaseAnchor {
                point: *anchor,
                offset: S::zero(),
            },
        },
    }
}

/// Snaps an on-edge parameter to a vertex when it sits at an endpoint.
fn graph_point_at<S: Real>(parent: &Roadmap<S>, edge: usize, t: S) -> GraphPoint<S> {
    if t == S::zero() {
        GraphPoint::Vertex(parent.edges()[edge].u)
    } else if t == S::one() {
        GraphPoint::Vertex(parent.edges()[edge].v)
    } else {
        GraphPoint::OnEdge { edge, t }
    }
}

/// Runs QMP on a problem until solved or the termination condition fires.
pub fn plan_qmp<S: Real, R: Rng + ?Sized>(
    problem: &PlanningProblem<S>,
    ptc: Ptc,
    heuristics: HeuristicsConfig<S>,
    rng: &mut R,
    params: &PlannerParams<S>,
) -> Result<QmpRun<S>> {
    let mut planner = QmpPlanner::new(problem, heuristics, params.clone())?;
    let started = Instant::now();
    loop {
        if planner.solved() {
            break;
        }
        if ptc.fired(started, planner.iterations()) {
            break;
        }
        planner.step(rng)?;
    }
    Ok(planner.into_run())
}
