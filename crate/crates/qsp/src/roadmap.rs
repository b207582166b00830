//! Roadmap graph core and the baseline PRM planner: growth by uniform
//! sampling, R-nearest neighbors, straight-line connection truncated at
//! obstacles, and shortest-path queries with a deterministic tie-break.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::cspace::{Configuration, ProductSpace};
use crate::error::{Error, Result};
use crate::real::Real;

/// An undirected weighted edge; `len` equals the metric distance of the
/// endpoint configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct RoadmapEdge<S> {
    pub u: usize,
    pub v: usize,
    pub len: S,
}

/// Undirected graph of configurations with validity-checked edges.
///
/// Vertex and edge indices are insertion-ordered and stable; edge lengths
/// and the total edge length are maintained incrementally.
#[derive(Debug, Clone)]
pub struct Roadmap<S> {
    space: ProductSpace<S>,
    vertices: Vec<Configuration<S>>,
    edges: Vec<RoadmapEdge<S>>,
    adjacency: Vec<Vec<usize>>,
    total_edge_length: S,
    components: DisjointSets,
}

impl<S: Real> Roadmap<S> {
    pub fn new(space: ProductSpace<S>) -> Self {
        Roadmap {
            space,
            vertices: Vec::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
            total_edge_length: S::zero(),
            components: DisjointSets::new(),
        }
    }

    pub fn space(&self) -> &ProductSpace<S> {
        &self.space
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all edge lengths (L in the density bookkeeping).
    pub fn total_edge_length(&self) -> S {
        self.total_edge_length
    }

    pub fn vertex(&self, i: usize) -> &Configuration<S> {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Configuration<S>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[RoadmapEdge<S>] {
        &self.edges
    }

    /// Edge indices incident to a vertex.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn add_vertex(&mut self, q: Configuration<S>) -> usize {
        debug_assert_eq!(q.dim(), self.space.dim());
        self.vertices.push(q);
        self.adjacency.push(Vec::new());
        self.components.push();
        self.vertices.len() - 1
    }

    /// Adds an undirected edge; self-loops and duplicates are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Option<usize> {
        if u == v || u >= self.vertices.len() || v >= self.vertices.len() {
            return None;
        }
        if self.adjacency[u]
            .iter()
            .any(|&e| self.edges[e].u == v || self.edges[e].v == v)
        {
            return None;
        }
        let len = self
            .space
            .distance_unchecked(&self.vertices[u], &self.vertices[v]);
        let id = self.edges.len();
        self.edges.push(RoadmapEdge { u, v, len });
        self.adjacency[u].push(id);
        self.adjacency[v].push(id);
        self.total_edge_length = self.total_edge_length + len;
        self.components.union(u, v);
        Some(id)
    }

    pub fn connected(&mut self, u: usize, v: usize) -> bool {
        self.components.find(u) == self.components.find(v)
    }

    /// The `r` vertices nearest to `q` by the space metric (insertion-order
    /// tie-break), excluding `exclude`.
    pub fn nearest(&self, q: &Configuration<S>, r: usize, exclude: Option<usize>) -> Vec<usize> {
        let mut scored: Vec<(S, usize)> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != exclude)
            .map(|(i, v)| (self.space.distance_unchecked(q, v), i))
            .collect();
        scored.sort_by(|a, b| a.partial_cmp(b).expect("distances are comparable"));
        scored.into_iter().take(r).map(|(_, i)| i).collect()
    }

    /// Index of a vertex exactly equal to `q`, if any.
    pub fn find_vertex(&self, q: &Configuration<S>) -> Option<usize> {
        self.vertices.iter().position(|v| v == q)
    }

    /// Multi-source Dijkstra over edge lengths. Returns per-vertex distances
    /// and predecessor vertices; unreachable vertices keep infinite
    /// distance. Ties pop lowest vertex index first.
    pub fn dijkstra(&self, sources: &[(usize, S)]) -> (Vec<S>, Vec<Option<usize>>) {
        use std::cmp::Ordering;
        use std::collections::BinaryHeap;

        struct Entry<S> {
            dist: S,
            vertex: usize,
        }
        impl<S: Real> PartialEq for Entry<S> {
            fn eq(&self, o: &Self) -> bool {
                self.dist == o.dist && self.vertex == o.vertex
            }
        }
        impl<S: Real> Eq for Entry<S> {}
        impl<S: Real> Ord for Entry<S> {
            fn cmp(&self, o: &Self) -> Ordering {
                // Reversed for a min-heap; ties break toward the lower index.
                o.dist
                    .partial_cmp(&self.dist)
                    .expect("edge lengths are comparable")
                    .then_with(|| o.vertex.cmp(&self.vertex))
            }
        }
        impl<S: Real> PartialOrd for Entry<S> {
            fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
                Some(self.cmp(o))
            }
        }

        let n = self.vertices.len();
        let mut dist = vec![S::infinity(); n];
        let mut parent = vec![None; n];
        let mut heap = BinaryHeap::new();
        for &(v, d) in sources {
            if d < dist[v] {
                dist[v] = d;
                heap.push(Entry { dist: d, vertex: v });
            }
        }
        while let Some(Entry { dist: d, vertex: u }) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &self.adjacency[u] {
                let edge = &self.edges[e];
                let w = if edge.u == u { edge.v } else { edge.u };
                let nd = d + edge.len;
                if nd < dist[w] {
                    dist[w] = nd;
                    parent[w] = Some(u);
                    heap.push(Entry { dist: nd, vertex: w });
                }
            }
        }
        (dist, parent)
    }

    /// Shortest path between two existing vertices given by configuration.
    pub fn shortest_path(
        &self,
        q_start: &Configuration<S>,
        q_goal: &Configuration<S>,
    ) -> Result<PathResult<S>> {
        let s = self.find_vertex(q_start).ok_or_else(|| {
            Error::InvalidQuery("start configuration is not a roadmap vertex".to_string())
        })?;
        let g = self.find_vertex(q_goal).ok_or_else(|| {
            Error::InvalidQuery("goal configuration is not a roadmap vertex".to_string())
        })?;
        Ok(self.shortest_path_idx(s, g))
    }

    /// Shortest path between vertex indices; `Unsolved` if disconnected.
    pub fn shortest_path_idx(&self, start: usize, goal: usize) -> PathResult<S> {
        if start == goal {
            return PathResult {
                status: PathStatus::Solved,
                waypoints: vec![self.vertices[start].clone()],
                vertex_ids: vec![start],
                length: S::zero(),
            };
        }
        let (dist, parent) = self.dijkstra(&[(start, S::zero())]);
        if !dist[goal].is_finite() {
            return PathResult::unsolved();
        }
        let mut ids = vec![goal];
        let mut cur = goal;
        while let Some(p) = parent[cur] {
            ids.push(p);
            cur = p;
        }
        ids.reverse();
        debug_assert_eq!(ids[0], start);
        PathResult {
            status: PathStatus::Solved,
            waypoints: ids.iter().map(|&i| self.vertices[i].clone()).collect(),
            vertex_ids: ids,
            length: dist[goal],
        }
    }

    /// Recomputes |G| bookkeeping from scratch (for consistency checks).
    pub fn recompute_total_edge_length(&self) -> S {
        self.edges.iter().fold(S::zero(), |acc, e| acc + e.len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStatus {
    Solved,
    Unsolved,
}

/// A planner answer: waypoint chain and its length, or `Unsolved`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathResult<S> {
    pub status: PathStatus,
    pub waypoints: Vec<Configuration<S>>,
    /// Roadmap vertex ids of the waypoints (empty for unsolved results).
    pub vertex_ids: Vec<usize>,
    pub length: S,
}

impl<S: Real> PathResult<S> {
    pub fn unsolved() -> Self {
        PathResult {
            status: PathStatus::Unsolved,
            waypoints: Vec::new(),
            vertex_ids: Vec::new(),
            length: S::zero(),
        }
    }

    pub fn solved(&self) -> bool {
        self.status == PathStatus::Solved
    }
}

/// Planner termination condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ptc {
    TimeLimit(Duration),
    IterationLimit(u64),
    /// Run until the first solution (never fires on its own).
    FirstSolution,
}

impl Ptc {
    pub fn time_limit_s(seconds: f64) -> Result<Ptc> {
        if seconds <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "time limit must be positive, got {seconds}"
            )));
        }
        Ok(Ptc::TimeLimit(Duration::from_secs_f64(seconds)))
    }

    pub fn iteration_limit(n: u64) -> Result<Ptc> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "iteration limit must be positive".to_string(),
            ));
        }
        Ok(Ptc::IterationLimit(n))
    }

    pub fn fired(&self, started: Instant, iterations: u64) -> bool {
        match self {
            Ptc::TimeLimit(limit) => started.elapsed() >= *limit,
            Ptc::IterationLimit(n) => iterations >= *n,
            Ptc::FirstSolution => false,
        }
    }
}

/// Tunables shared by the planners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannerParams<S> {
    /// Neighbor count for R-nearest connection attempts.
    pub r_neighbors: usize,
    /// Edge validity step length; `None` picks 0.01 x the space diagonal.
    pub resolution: Option<S>,
}

impl<S: Real> Default for PlannerParams<S> {
    fn default() -> Self {
        PlannerParams {
            r_neighbors: 10,
            resolution: None,
        }
    }
}

impl<S: Real> PlannerParams<S> {
    pub fn resolution_for(&self, space: &ProductSpace<S>) -> S {
        self.resolution
            .unwrap_or_else(|| S::from_f64(0.01) * space.diagonal())
    }
}

/// Walks from `a` toward `b` in metric steps of at most `resolution` and
/// returns the last valid configuration (possibly `b`, possibly `a` itself).
pub fn connect_straight<S: Real>(
    space: &ProductSpace<S>,
    validity: &dyn Fn(&Configuration<S>) -> bool,
    a: &Configuration<S>,
    b: &Configuration<S>,
    resolution: S,
) -> Configuration<S> {
    debug_assert!(resolution > S::zero());
    let dist = space.distance_unchecked(a, b);
    if dist == S::zero() {
        return a.clone();
    }
    let steps = (dist / resolution).ceil().to_f64() as u64;
    let steps = steps.max(1);
    let mut last = a.clone();
    for i in 1..=steps {
        let t = S::from_usize(i as usize) / S::from_usize(steps as usize);
        let q = space.interpolate_unchecked(a, b, t);
        if !validity(&q) {
            return last;
        }
        last = q;
    }
    last
}

/// What a single growth step changed.
#[derive(Debug, Clone, Default)]
pub struct GrowthReport {
    /// False when the sample was invalid and the graph left untouched.
    pub accepted: bool,
    pub new_vertices: Vec<usize>,
    pub new_edges: Vec<usize>,
}

/// One PRM growth iteration: sample, validate, connect to the R nearest
/// vertices by straight lines truncated at obstacles.
pub fn grow_prm<S: Real, R: Rng + ?Sized>(
    graph: &mut Roadmap<S>,
    validity: &dyn Fn(&Configuration<S>) -> bool,
    rng: &mut R,
    r_neighbors: usize,
    resolution: S,
) -> GrowthReport {
    let mut report = GrowthReport::default();
    let q_rand = graph.space().sample_uniform(rng);
    if !validity(&q_rand) {
        return report;
    }
    report.accepted = true;
    let v_rand = graph.add_vertex(q_rand.clone());
    report.new_vertices.push(v_rand);
    let neighbors = graph.nearest(&q_rand, r_neighbors, Some(v_rand));
    for near in neighbors {
        let q_new = connect_straight(
            graph.space(),
            validity,
            graph.vertex(near),
            &q_rand,
            resolution,
        );
        if &q_new == graph.vertex(near) {
            continue;
        }
        let target = if q_new == q_rand {
            v_rand
        } else {
            let t = graph.add_vertex(q_new);
            report.new_vertices.push(t);
            t
        };
        if let Some(e) = graph.add_edge(near, target) {
            report.new_edges.push(e);
        }
    }
    report
}

/// Result of a PRM run: the answer plus the grown roadmap and counters.
#[derive(Debug, Clone)]
pub struct PrmRun<S> {
    pub result: PathResult<S>,
    pub graph: Roadmap<S>,
    pub iterations: u64,
}

/// Baseline PRM (start and goal inserted up front, growth until connected
/// or the termination condition fires).
pub fn plan_prm<S: Real, R: Rng + ?Sized>(
    space: &ProductSpace<S>,
    validity: &dyn Fn(&Configuration<S>) -> bool,
    q_start: &Configuration<S>,
    q_goal: &Configuration<S>,
    ptc: Ptc,
    rng: &mut R,
    params: &PlannerParams<S>,
) -> Result<PrmRun<S>> {
    if !validity(q_start) {
        return Err(Error::InvalidQuery(
            "start configuration is invalid".to_string(),
        ));
    }
    if !validity(q_goal) {
        return Err(Error::InvalidQuery(
            "goal configuration is invalid".to_string(),
        ));
    }
    let resolution = params.resolution_for(space);
    let mut graph = Roadmap::new(space.clone());
    let start_idx = graph.add_vertex(q_start.clone());
    let goal_idx = if q_goal == q_start {
        start_idx
    } else {
        graph.add_vertex(q_goal.clone())
    };
    // The seeds may already see each other.
    if start_idx != goal_idx {
        let q_new = connect_straight(space, validity, q_start, q_goal, resolution);
        if &q_new == q_goal {
            graph.add_edge(start_idx, goal_idx);
        }
    }

    let started = Instant::now();
    let mut iterations = 0u64;
    loop {
        if graph.connected(start_idx, goal_idx) {
            let result = graph.shortest_path_idx(start_idx, goal_idx);
            return Ok(PrmRun {
                result,
                graph,
                iterations,
            });
        }
        if ptc.fired(started, iterations) {
            return Ok(PrmRun {
                result: PathResult::unsolved(),
                graph,
                iterations,
            });
        }
        grow_prm(&mut graph, validity, rng, params.r_neighbors, resolution);
        iterations += 1;
    }
}

/// Union-find over vertex indices.
#[derive(Debug, Clone, Default)]
struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new() -> Self {
        DisjointSets::default()
    }

    fn push(&mut self) {
        self.parent.push(self.parent.len());
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Attach the younger root so vertex 0 stays canonical.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cspace::SpaceFactor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn box2(hi: f64) -> ProductSpace<f64> {
        ProductSpace::new(vec![SpaceFactor::Euclidean(vec![(0.0, hi), (0.0, hi)])]).unwrap()
    }

    fn cfg(s: &ProductSpace<f64>, v: Vec<f64>) -> Configuration<f64> {
        s.configuration(v).unwrap()
    }

    #[test]
    fn edges_carry_metric_length_and_reject_duplicates() {
        let s = box2(10.0);
        let mut g = Roadmap::new(s.clone());
        let a = g.add_vertex(cfg(&s, vec![0.0, 0.0]));
        let b = g.add_vertex(cfg(&s, vec![3.0, 4.0]));
        let e = g.add_edge(a, b).unwrap();
        assert!((g.edges()[e].len - 5.0).abs() < 1e-12);
        assert!(g.add_edge(a, b).is_none());
        assert!(g.add_edge(b, a).is_none());
        assert!(g.add_edge(a, a).is_none());
        assert!((g.total_edge_length() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn shortest_path_prefers_cheap_detour() {
        let s = box2(10.0);
        let mut g = Roadmap::new(s.clone());
        let a = g.add_vertex(cfg(&s, vec![0.0, 0.0]));
        let b = g.add_vertex(cfg(&s, vec![1.0, 0.0]));
        let m = g.add_vertex(cfg(&s, vec![0.5, 0.3]));
        g.add_edge(a, b);
        g.add_edge(a, m);
        g.add_edge(m, b);
        // Direct edge has length 1.0; the detour is ~1.166, so direct wins.
        let p = g.shortest_path_idx(a, b);
        assert_eq!(p.vertex_ids, vec![a, b]);

        // Shrink the direct edge's competitiveness: use a true detour test
        // with lengths 1.0 vs 0.4 + 0.4.
        let mut g = Roadmap::new(s.clone());
        let a = g.add_vertex(cfg(&s, vec![0.0, 0.0]));
        let b = g.add_vertex(cfg(&s, vec![1.0, 0.0]));
        let c = g.add_vertex(cfg(&s, vec![0.5, 0.0]));
        // Fake a long direct connection by routing through distant vertex d.
        let d = g.add_vertex(cfg(&s, vec![0.5, 2.0]));
        g.add_edge(a, d);
        g.add_edge(d, b);
        g.add_edge(a, c);
        g.add_edge(c, b);
        let p = g.shortest_path_idx(a, b);
        assert_eq!(p.vertex_ids, vec![a, c, b]);
        assert!((p.length - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shortest_path_unsolved_when_disconnected() {
        let s = box2(10.0);
        let mut g = Roadmap::new(s.clone());
        let a = g.add_vertex(cfg(&s, vec![0.0, 0.0]));
        let b = g.add_vertex(cfg(&s, vec![5.0, 5.0]));
        assert_eq!(g.shortest_path_idx(a, b).status, PathStatus::Unsolved);
        let missing = cfg(&s, vec![9.0, 9.0]);
        assert!(g.shortest_path(&missing, g.vertex(0)).is_err());
    }

    #[test]
    fn single_edge_path() {
        let s = box2(10.0);
        let mut g = Roadmap::new(s.clone());
        let a = g.add_vertex(cfg(&s, vec![1.0, 1.0]));
        let b = g.add_vertex(cfg(&s, vec![2.0, 1.0]));
        g.add_edge(a, b);
        let qa = cfg(&s, vec![1.0, 1.0]);
        let qb = cfg(&s, vec![2.0, 1.0]);
        let p = g.shortest_path(&qa, &qb).unwrap();
        assert!(p.solved());
        assert!((p.length - 1.0).abs() < 1e-12);
        assert_eq!(p.waypoints.len(), 2);
        assert_eq!(p.vertex_ids, vec![a, b]);
    }

    /// Brute-force oracle: enumerate all simple paths in small graphs and
    /// check Dijkstra never returns anything longer than the best of them.
    #[test]
    fn shortest_path_matches_exhaustive_enumeration() {
        let s = box2(10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut g = Roadmap::new(s.clone());
            let n = rng.gen_range(2..=8usize);
            for _ in 0..n {
                let q = s.sample_uniform(&mut rng);
                g.add_vertex(q);
            }
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.45) {
                        g.add_edge(u, v);
                    }
                }
            }
            let best = enumerate_best(&g, 0, n - 1);
            let got = g.shortest_path_idx(0, n - 1);
            match best {
                None => assert_eq!(got.status, PathStatus::Unsolved),
                Some(len) => {
                    assert!(got.solved());
                    assert!(
                        (got.length - len).abs() < 1e-9,
                        "dijkstra {} vs enumerated {}",
                        got.length,
                        len
                    );
                }
            }
        }
    }

    fn enumerate_best(g: &Roadmap<f64>, s: usize, t: usize) -> Option<f64> {
        fn dfs(
            g: &Roadmap<f64>,
            cur: usize,
            t: usize,
            seen: &mut Vec<bool>,
            len: f64,
            best: &mut Option<f64>,
        ) {
            if cur == t {
                if best.map_or(true, |b| len < b) {
                    *best = Some(len);
                }
                return;
            }
            for &e in g.incident_edges(cur) {
                let edge = &g.edges()[e];
                let nxt = if edge.u == cur { edge.v } else { edge.u };
                if !seen[nxt] {
                    seen[nxt] = true;
                    dfs(g, nxt, t, seen, len + edge.len, best);
                    seen[nxt] = false;
                }
            }
        }
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        let mut best = None;
        dfs(g, s, t, &mut seen, 0.0, &mut best);
        best
    }

    #[test]
    fn connect_straight_examples() {
        let s = box2(10.0);
        let free = |_: &Configuration<f64>| true;
        let a = cfg(&s, vec![1.0, 1.0]);
        let b = cfg(&s, vec![9.0, 1.0]);
        assert_eq!(connect_straight(&s, &free, &a, &b, 0.1), b);
        assert_eq!(connect_straight(&s, &free, &a, &a, 0.1), a);

        // Wall at x in [4, 5]: the walk stops strictly before it and one
        // more step would be invalid.
        let wall = |q: &Configuration<f64>| !(q.values()[0] >= 4.0 && q.values()[0] <= 5.0);
        let stopped = connect_straight(&s, &wall, &a, &b, 0.05);
        assert!(wall(&stopped));
        assert!(stopped.values()[0] < 4.0);
        assert!(stopped.values()[0] > 3.8);

        // Fully blocked from the first step.
        let all_blocked = |q: &Configuration<f64>| q == &a;
        assert_eq!(connect_straight(&s, &all_blocked, &a, &b, 0.05), a);
    }

    #[test]
    fn grow_prm_examples() {
        let s = box2(10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let free = |_: &Configuration<f64>| true;
        let mut g = Roadmap::new(s.clone());
        let rep = grow_prm(&mut g, &free, &mut rng, 5, 0.5);
        assert!(rep.accepted);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);

        let rep = grow_prm(&mut g, &free, &mut rng, 5, 0.5);
        assert!(rep.accepted);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let e = &g.edges()[0];
        assert!(
            (e.len - s.distance(g.vertex(e.u), g.vertex(e.v)).unwrap()).abs() < 1e-12
        );

        // A validity predicate that rejects everything leaves the graph alone.
        let blocked = |_: &Configuration<f64>| false;
        let before = g.vertex_count();
        let rep = grow_prm(&mut g, &blocked, &mut rng, 5, 0.5);
        assert!(!rep.accepted);
        assert_eq!(g.vertex_count(), before);
    }

    #[test]
    fn plan_prm_trivial_scene_and_determinism() {
        let s = box2(10.0);
        let free = |_: &Configuration<f64>| true;
        let q_i = cfg(&s, vec![1.0, 1.0]);
        let q_g = cfg(&s, vec![9.0, 9.0]);
        let params = PlannerParams::default();
        let run = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            plan_prm(
                &s,
                &free,
                &q_i,
                &q_g,
                Ptc::iteration_limit(500).unwrap(),
                &mut rng,
                &params,
            )
            .unwrap()
        };
        let a = run(1);
        assert!(a.result.solved());
        let straight = s.distance(&q_i, &q_g).unwrap();
        assert!(a.result.length <= 1.5 * straight, "length {}", a.result.length);
        let b = run(1);
        assert_eq!(a.result, b.result);
        assert_eq!(a.graph.vertex_count(), b.graph.vertex_count());

        let blocked_start = |q: &Configuration<f64>| q != &q_i;
        assert!(plan_prm(
            &s,
            &blocked_start,
            &q_i,
            &q_g,
            Ptc::iteration_limit(10).unwrap(),
            &mut ChaCha8Rng::seed_from_u64(0),
            &params,
        )
        .is_err());
    }

    #[test]
    fn plan_prm_unsolvable_hits_ptc() {
        let s = box2(10.0);
        // Wall with no gap.
        let wall = |q: &Configuration<f64>| !(q.values()[0] >= 4.0 && q.values()[0] <= 5.0);
        let q_i = cfg(&s, vec![1.0, 5.0]);
        let q_g = cfg(&s, vec![9.0, 5.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let run = plan_prm(
            &s,
            &wall,
            &q_i,
            &q_g,
            Ptc::iteration_limit(300).unwrap(),
            &mut rng,
            &PlannerParams::default(),
        )
        .unwrap();
        assert_eq!(run.result.status, PathStatus::Unsolved);
        assert_eq!(run.iterations, 300);
    }

    #[test]
    fn incremental_bookkeeping_survives_fuzzing() {
        let s = box2(10.0);
        let wall = |q: &Configuration<f64>| {
            !(q.values()[0] >= 4.0 && q.values()[0] <= 4.6 && q.values()[1] <= 7.0)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut g = Roadmap::new(s.clone());
        for _ in 0..10_000 {
            grow_prm(&mut g, &wall, &mut rng, 6, 0.4);
        }
        assert!(g.vertex_count() > 1000);
        let recomputed = g.recompute_total_edge_length();
        assert!(
            (g.total_edge_length() - recomputed).abs() < 1e-9,
            "incremental {} vs recomputed {}",
            g.total_edge_length(),
            recomputed
        );
        // Every vertex valid; every edge revalidates at resolution.
        for v in g.vertices() {
            assert!(wall(v));
        }
        for e in g.edges() {
            let q = connect_straight(&s, &wall, g.vertex(e.u), g.vertex(e.v), 0.4);
            assert_eq!(&q, g.vertex(e.v), "edge {}-{} fails revalidation", e.u, e.v);
        }
    }

    #[test]
    fn success_rate_is_monotone_in_budget() {
        let s = box2(10.0);
        // Narrow gap in a wall makes the problem hard enough to miss.
        let gap = |q: &Configuration<f64>| {
            let (x, y) = (q.values()[0], q.values()[1]);
            !(x >= 4.0 && x <= 5.0 && !(y >= 4.7 && y <= 5.3))
        };
        let q_i = cfg(&s, vec![1.0, 5.0]);
        let q_g = cfg(&s, vec![9.0, 5.0]);
        let params = PlannerParams::default();
        let mut successes = [0usize; 2];
        for (slot, iters) in [(0usize, 60u64), (1, 120)] {
            for seed in 0..50u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let run = plan_prm(
                    &s,
                    &gap,
                    &q_i,
                    &q_g,
                    Ptc::iteration_limit(iters).unwrap(),
                    &mut rng,
                    &params,
                )
                .unwrap();
                if run.result.solved() {
                    successes[slot] += 1;
                }
            }
        }
        assert!(
            successes[1] >= successes[0],
            "2x budget solved {} < 1x budget {}",
            successes[1],
            successes[0]
        );
        assert!(successes[0] > 0);
    }
}
