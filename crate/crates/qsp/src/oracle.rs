//! Brute-force ground truth: breadth-first reachability over regular grids
//! on low-dimensional levels, plus an exhaustive grid check of the
//! nested-robot necessary condition.
//!
//! Cell validity is sampled at the cell center only; fixture scenes are
//! authored with enough clearance that verdicts are stable under grid
//! refinement. Verdicts can be cached to disk keyed by scene text and grid.

use std::collections::VecDeque;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cspace::{Configuration, Coord};
use crate::error::{Error, Result};
use crate::real::{normalize_angle, Real};
use crate::scene::PlanningProblem;

/// Regular grid over one level's configuration space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    /// 1-based level this grid discretizes.
    pub level: usize,
    /// Cells per dimension, in coordinate order.
    pub cells: Vec<usize>,
}

impl GridSpec {
    pub fn new(level: usize, cells: Vec<usize>) -> Result<Self> {
        if cells.is_empty() || cells.len() > 3 {
            return Err(Error::InvalidParameter(format!(
                "grid oracle supports 1 to 3 dimensions, got {}",
                cells.len()
            )));
        }
        if cells.iter().any(|&n| n < 2) {
            return Err(Error::InvalidParameter(
                "grid needs at least 2 cells per dimension".to_string(),
            ));
        }
        Ok(GridSpec { level, cells })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridVerdict<S> {
    Reachable { path: Vec<Configuration<S>> },
    Unreachable { reason: String },
}

impl<S> GridVerdict<S> {
    pub fn reachable(&self) -> bool {
        matches!(self, GridVerdict::Reachable { .. })
    }
}

struct Grid<S> {
    cells: Vec<usize>,
    centers: Vec<Vec<S>>,
    wraps: Vec<bool>,
}

impl<S: Real> Grid<S> {
    fn build(problem: &PlanningProblem<S>, level: usize, spec: &GridSpec) -> Result<Self> {
        let space = problem.space(level);
        if space.dim() != spec.cells.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} dimensions, level {level} has {}",
                spec.cells.len(),
                space.dim()
            )));
        }
        let mut centers = Vec::new();
        let mut wraps = Vec::new();
        for (c, &n) in space.coords().iter().zip(&spec.cells) {
            let (lo, hi, wrap) = match c {
                Coord::Linear { lo, hi, .. } => (*lo, *hi, false),
                Coord::Angle { .. } => (-S::PI(), S::PI(), true),
            };
            let w = (hi - lo) / S::from_usize(n);
            centers.push(
                (0..n)
                    .map(|j| lo + w * (S::from_usize(j) + S::from_f64(0.5)))
                    .collect(),
            );
            wraps.push(wrap);
        }
        Ok(Grid {
            cells: spec.cells.clone(),
            centers,
            wraps,
        })
    }

    fn dim(&self) -> usize {
        self.cells.len()
    }

    fn total(&self) -> usize {
        self.cells.iter().product()
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.cells)
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    fn unflat(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for d in (0..self.dim()).rev() {
            idx[d] = flat % self.cells[d];
            flat /= self.cells[d];
        }
        idx
    }

    fn center(&self, idx: &[usize]) -> Configuration<S> {
        Configuration::from_values(
            idx.iter()
                .enumerate()
                .map(|(d, &i)| self.centers[d][i])
                .collect(),
        )
    }

    /// Cell containing a configuration (angles wrapped, linear axes clamped).
    fn snap(&self, q: &Configuration<S>, space_coords: &[Coord<S>]) -> Vec<usize> {
        q.values()
            .iter()
            .enumerate()
            .map(|(d, &v)| {
                let n = self.cells[d];
                let (lo, hi) = match &space_coords[d] {
                    Coord::Linear { lo, hi, .. } => (*lo, *hi),
                    Coord::Angle { .. } => (-S::PI(), S::PI()),
                };
                let v = if self.wraps[d] { normalize_angle(v) } else { v };
                let w = (hi - lo) / S::from_usize(n);
                let j = ((v - lo) / w).floor().to_f64() as isize;
                (j.max(0) as usize).min(n - 1)
            })
            .collect()
    }

    fn neighbors(&self, idx: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for d in 0..self.dim() {
            let n = self.cells[d];
            for step in [-1isize, 1] {
                let mut nb = idx.to_vec();
                let j = idx[d] as isize + step;
                if self.wraps[d] {
                    nb[d] = ((j % n as isize + n as isize) % n as isize) as usize;
                } else if j < 0 || j >= n as isize {
                    continue;
                } else {
                    nb[d] = j as usize;
                }
                out.push(nb);
            }
        }
        out
    }
}

/// Breadth-first reachability between the cells containing the level's
/// start and goal, over cell centers validated by the feasibility predicate.
pub fn grid_plan<S: Real>(
    problem: &PlanningProblem<S>,
    level: usize,
    spec: &GridSpec,
) -> Result<GridVerdict<S>> {
    let pairs = problem.project_problem()?;
    let (q_start, q_goal) = &pairs[level - 1];
    grid_plan_between(problem, level, spec, q_start, q_goal)
}

/// Like [`grid_plan`] but with explicit query endpoints (used for
/// restricted homotopy checks).
pub fn grid_plan_between<S: Real>(
    problem: &PlanningProblem<S>,
    level: usize,
    spec: &GridSpec,
    q_start: &Configuration<S>,
    q_goal: &Configuration<S>,
) -> Result<GridVerdict<S>> {
    let grid = Grid::build(problem, level, spec)?;
    let coords = problem.space(level).coords().to_vec();
    let start = grid.snap(q_start, &coords);
    let goal = grid.snap(q_goal, &coords);

    for (label, cell) in [("start", &start), ("goal", &goal)] {
        if !problem.is_valid(level, &grid.center(cell))? {
            return Ok(GridVerdict::Unreachable {
                reason: format!("{label} cell center is infeasible at level {level}"),
            });
        }
    }

    let total = grid.total();
    let mut seen = vec![false; total];
    let mut parent: Vec<usize> = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    let s = grid.flat(&start);
    let g = grid.flat(&goal);
    seen[s] = true;
    queue.push_back(s);
    while let Some(cur) = queue.pop_front() {
        if cur == g {
            let mut cells = vec![cur];
            let mut at = cur;
            while parent[at] != usize::MAX {
                at = parent[at];
                cells.push(at);
            }
            cells.reverse();
            let path = cells
                .into_iter()
                .map(|f| grid.center(&grid.unflat(f)))
                .collect();
            return Ok(GridVerdict::Reachable { path });
        }
        let idx = grid.unflat(cur);
        for nb in grid.neighbors(&idx) {
            let f = grid.flat(&nb);
            if !seen[f] {
                seen[f] = true;
                if problem.is_valid(level, &grid.center(&nb))? {
                    parent[f] = cur;
                    queue.push_back(f);
                }
            }
        }
    }
    Ok(GridVerdict::Unreachable {
        reason: "goal cell not reached".to_string(),
    })
}

/// Exhaustive grid check of the nested-robot necessary condition.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryConditionReport<S> {
    /// Pairs `(p, q)` with invalid base checked across all levels.
    pub checked_pairs: usize,
    pub violations: usize,
    pub first_violation: Option<(usize, Configuration<S>, Configuration<S>)>,
}

/// Checks, for every grid cell pair `(p, q)` at every level boundary, that
/// an infeasible base implies an infeasible lifted configuration. The grids
/// must agree on the shared prefix dimensions.
pub fn grid_necessary_condition<S: Real>(
    problem: &PlanningProblem<S>,
    grids: &[GridSpec],
) -> Result<NecessaryConditionReport<S>> {
    let d = problem.sequence.decomposition();
    let depth = problem.depth();
    if grids.len() != depth {
        return Err(Error::InvalidParameter(format!(
            "need one grid per level: got {} for {} levels",
            grids.len(),
            depth
        )));
    }
    let mut report = NecessaryConditionReport {
        checked_pairs: 0,
        violations: 0,
        first_violation: None,
    };
    for k in 2..=depth {
        let base_spec = &grids[k - 2];
        let cur_spec = &grids[k - 1];
        let base_dim = problem.space(k - 1).dim();
        if cur_spec.cells[..base_dim] != base_spec.cells[..] {
            return Err(Error::InvalidParameter(format!(
                "grid for level {k} does not extend the level {} grid",
                k - 1
            )));
        }
        let base_grid = Grid::build(problem, k - 1, base_spec)?;
        let fiber_cells = &cur_spec.cells[base_dim..];
        let fiber_space = d.fiber(k);
        let fiber_centers: Vec<Configuration<S>> = enumerate_centers(fiber_space, fiber_cells);
        for flat in 0..base_grid.total() {
            let base = base_grid.center(&base_grid.unflat(flat));
            if problem.is_valid(k - 1, &base)? {
                continue;
            }
            for fiber in &fiber_centers {
                report.checked_pairs += 1;
                let lifted = d.lift(k, &base, fiber)?;
                if problem.is_valid(k, &lifted)? {
                    report.violations += 1;
                    if report.first_violation.is_none() {
                        report.first_violation = Some((k, base.clone(), fiber.clone()));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn enumerate_centers<S: Real>(
    space: &crate::cspace::ProductSpace<S>,
    cells: &[usize],
) -> Vec<Configuration<S>> {
    let axes: Vec<Vec<S>> = space
        .coords()
        .iter()
        .zip(cells)
        .map(|(c, &n)| {
            let (lo, hi) = match c {
                Coord::Linear { lo, hi, .. } => (*lo, *hi),
                Coord::Angle { .. } => (-S::PI(), S::PI()),
            };
            let w = (hi - lo) / S::from_usize(n);
            (0..n)
                .map(|j| lo + w * (S::from_usize(j) + S::from_f64(0.5)))
                .collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for axis in &axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for partial in &out {
            for &v in axis {
                let mut p = partial.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Configuration::from_values).collect()
}

/// Cached verdict written next to benchmark fixtures.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CachedVerdict {
    pub reachable: bool,
    pub path_cells: usize,
}

/// Cache key: scene text, level, and grid resolution.
pub fn cache_key(scene_text: &str, level: usize, spec: &GridSpec) -> String {
    let mut h = Sha256::new();
    h.update(scene_text.as_bytes());
    h.update(level.to_le_bytes());
    for c in &spec.cells {
        h.update(c.to_le_bytes());
    }
    h.finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            use std::fmt::Write;
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// Runs `grid_plan`, reusing a cached verdict when one exists.
pub fn cached_grid_plan<S: Real>(
    problem: &PlanningProblem<S>,
    scene_text: &str,
    level: usize,
    spec: &GridSpec,
    cache_dir: impl AsRef<Path>,
) -> Result<CachedVerdict> {
    let dir = cache_dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.json", cache_key(scene_text, level, spec)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str::<CachedVerdict>(&text) {
            return Ok(v);
        }
    }
    let verdict = grid_plan(problem, level, spec)?;
    let cached = match &verdict {
        GridVerdict::Reachable { path } => CachedVerdict {
            reachable: true,
            path_cells: path.len(),
        },
        GridVerdict::Unreachable { .. } => CachedVerdict {
            reachable: false,
            path_cells: 0,
        },
    };
    std::fs::write(
        &path,
        serde_json::to_string(&cached).expect("verdict serializes"),
    )?;
    Ok(cached)
}
