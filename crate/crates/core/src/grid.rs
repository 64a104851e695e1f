//! Grid world model: positions, obstacle maps, configurations, plans, and
//! the collision semantics shared by every solver.
//!
//! Coordinates are 1-based: `x` is the row in `1..=rows`, `y` the column in
//! `1..=cols`. A step may move a robot to a 4-adjacent cell or leave it in
//! place. Moving into a cell that is simultaneously vacated is legal
//! (following moves and cycle rotations); vertex collisions and edge swaps
//! are not.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;

pub type RobotId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: i32,
    pub y: i32,
}

impl Position {
    pub const fn new(x: i32, y: i32) -> Self {
        Position { x, y }
    }

    pub fn manhattan(&self, other: &Position) -> i32 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    pub fn is_adjacent(&self, other: &Position) -> bool {
        self.manhattan(other) == 1
    }

    /// Transpose row/column, used by the CRC (column-first) solver variants.
    pub fn transposed(&self) -> Position {
        Position { x: self.y, y: self.x }
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Debug)]
pub struct GridMap {
    rows: i32,
    cols: i32,
    obstacles: HashSet<Position>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GridError {
    #[error("grid dimensions must be positive, got {0}x{1}")]
    BadDimensions(i32, i32),
    #[error("obstacle {0:?} out of bounds")]
    ObstacleOutOfBounds(Position),
    #[error("duplicate obstacle {0:?}")]
    DuplicateObstacle(Position),
    #[error("configuration places robot {robot} on occupied cell {at:?}")]
    CellOccupied { robot: RobotId, at: Position },
    #[error("configuration places robot {robot} on invalid cell {at:?}")]
    CellInvalid { robot: RobotId, at: Position },
    #[error("lower bound undefined for unlabeled instances")]
    UnlabeledLowerBound,
}

impl GridMap {
    pub fn new(rows: i32, cols: i32) -> Result<Self, GridError> {
        if rows < 1 || cols < 1 {
            return Err(GridError::BadDimensions(rows, cols));
        }
        Ok(GridMap { rows, cols, obstacles: HashSet::new() })
    }

    pub fn with_obstacles(
        rows: i32,
        cols: i32,
        obstacles: impl IntoIterator<Item = Position>,
    ) -> Result<Self, GridError> {
        let mut grid = GridMap::new(rows, cols)?;
        for p in obstacles {
            if !grid.in_bounds(p) {
                return Err(GridError::ObstacleOutOfBounds(p));
            }
            if !grid.obstacles.insert(p) {
                return Err(GridError::DuplicateObstacle(p));
            }
        }
        Ok(grid)
    }

    pub fn rows(&self) -> i32 {
        self.rows
    }

    pub fn cols(&self) -> i32 {
        self.cols
    }

    pub fn in_bounds(&self, p: Position) -> bool {
        p.x >= 1 && p.x <= self.rows && p.y >= 1 && p.y <= self.cols
    }

    pub fn is_obstacle(&self, p: Position) -> bool {
        self.obstacles.contains(&p)
    }

    /// Free (in-bounds, non-obstacle) cell.
    pub fn is_free(&self, p: Position) -> bool {
        self.in_bounds(p) && !self.is_obstacle(p)
    }

    pub fn obstacle_count(&self) -> usize {
        self.obstacles.len()
    }

    /// Obstacles in row-major order, for deterministic serialization.
    pub fn obstacles_sorted(&self) -> Vec<Position> {
        let mut v: Vec<Position> = self.obstacles.iter().copied().collect();
        v.sort();
        v
    }

    pub fn free_cell_count(&self) -> usize {
        (self.rows as usize) * (self.cols as usize) - self.obstacles.len()
    }

    pub fn neighbors4(&self, p: Position) -> impl Iterator<Item = Position> + '_ {
        const DELTAS: [(i32, i32); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
        DELTAS
            .iter()
            .map(move |&(dx, dy)| Position::new(p.x + dx, p.y + dy))
            .filter(|&q| self.is_free(q))
    }

    pub fn transposed(&self) -> GridMap {
        GridMap {
            rows: self.cols,
            cols: self.rows,
            obstacles: self.obstacles.iter().map(|p| p.transposed()).collect(),
        }
    }
}

/// Injective robot -> cell placement. Robot ids are dense indices.
pub type Configuration = Vec<Position>;

/// Check configuration validity against a grid: in bounds, off obstacles,
/// pairwise distinct.
pub fn check_configuration(grid: &GridMap, config: &[Position]) -> Result<(), GridError> {
    let mut seen: HashSet<Position> = HashSet::with_capacity(config.len());
    for (robot, &p) in config.iter().enumerate() {
        if !grid.is_free(p) {
            return Err(GridError::CellInvalid { robot, at: p });
        }
        if !seen.insert(p) {
            return Err(GridError::CellOccupied { robot, at: p });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub grid: GridMap,
    pub starts: Configuration,
    pub goals: Configuration,
    pub labeled: bool,
}

impl Instance {
    pub fn new(grid: GridMap, starts: Configuration, goals: Configuration, labeled: bool) -> Self {
        assert_eq!(starts.len(), goals.len(), "starts and goals must pair up");
        Instance { grid, starts, goals, labeled }
    }

    pub fn robots(&self) -> usize {
        self.starts.len()
    }

    pub fn validate(&self) -> Result<(), GridError> {
        check_configuration(&self.grid, &self.starts)?;
        check_configuration(&self.grid, &self.goals)
    }

    pub fn is_identity(&self) -> bool {
        self.starts == self.goals
    }

    pub fn transposed(&self) -> Instance {
        Instance {
            grid: self.grid.transposed(),
            starts: self.starts.iter().map(|p| p.transposed()).collect(),
            goals: self.goals.iter().map(|p| p.transposed()).collect(),
            labeled: self.labeled,
        }
    }
}

/// Synchronized per-robot paths. `paths[r]` has length `horizon + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub paths: Vec<Vec<Position>>,
}

impl Plan {
    /// A plan in which every robot sits at its start forever (horizon 0).
    pub fn empty(starts: &[Position]) -> Plan {
        Plan { paths: starts.iter().map(|&p| vec![p]).collect() }
    }

    pub fn robots(&self) -> usize {
        self.paths.len()
    }

    pub fn horizon(&self) -> usize {
        self.paths.first().map_or(0, |p| p.len() - 1)
    }

    pub fn config_at(&self, t: usize) -> Configuration {
        self.paths.iter().map(|path| path[t.min(path.len() - 1)]).collect()
    }

    /// Transpose all coordinates (mirror across the main diagonal).
    pub fn transposed(&self) -> Plan {
        Plan {
            paths: self
                .paths
                .iter()
                .map(|path| path.iter().map(|p| p.transposed()).collect())
                .collect(),
        }
    }

    /// Reverse time. The reverse of a valid plan is valid.
    pub fn reversed(&self) -> Plan {
        Plan {
            paths: self
                .paths
                .iter()
                .map(|path| path.iter().rev().copied().collect())
                .collect(),
        }
    }

    /// Drop all trailing all-wait steps.
    pub fn strip_trailing_waits(&mut self) {
        let m = makespan(self);
        for path in &mut self.paths {
            path.truncate(m + 1);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    VertexCollision,
    EdgeSwap,
    NonAdjacentMove,
    ObstacleEntry,
    OutOfBounds,
    WrongEndpoint,
}

/// First violation found, in deterministic scan order (lowest robot id,
/// then lowest second robot id).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub time: usize,
    pub robots: Vec<RobotId>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at t={} robots {:?}", self.kind, self.time, self.robots)
    }
}

fn violation(kind: ViolationKind, time: usize, robots: Vec<RobotId>) -> ViolationReport {
    ViolationReport { kind, time, robots }
}

fn validate_step_at(
    grid: &GridMap,
    from: &[Position],
    to: &[Position],
    time: usize,
) -> Result<(), ViolationReport> {
    assert_eq!(from.len(), to.len(), "step must cover the same robot set");
    // Per-robot move legality, lowest id first.
    for (robot, (&a, &b)) in from.iter().zip(to.iter()).enumerate() {
        if !grid.in_bounds(b) {
            return Err(violation(ViolationKind::OutOfBounds, time, vec![robot]));
        }
        if grid.is_obstacle(b) {
            return Err(violation(ViolationKind::ObstacleEntry, time, vec![robot]));
        }
        if a != b && !a.is_adjacent(&b) {
            return Err(violation(ViolationKind::NonAdjacentMove, time, vec![robot]));
        }
    }
    // Vertex collisions: two robots in the same target cell.
    let mut target_of: HashMap<Position, RobotId> = HashMap::with_capacity(to.len());
    let mut vertex: Option<(RobotId, RobotId)> = None;
    for (robot, &b) in to.iter().enumerate() {
        if let Some(&first) = target_of.get(&b) {
            if vertex.map_or(true, |(i, j)| (first, robot) < (i, j)) {
                vertex = Some((first, robot));
            }
        } else {
            target_of.insert(b, robot);
        }
    }
    if let Some((i, j)) = vertex {
        return Err(violation(ViolationKind::VertexCollision, time, vec![i, j]));
    }
    // Edge swaps: robots exchanging cells across one edge.
    let mut at: HashMap<Position, RobotId> = HashMap::with_capacity(from.len());
    for (robot, &a) in from.iter().enumerate() {
        at.insert(a, robot);
    }
    for (robot, (&a, &b)) in from.iter().zip(to.iter()).enumerate() {
        if a == b {
            continue;
        }
        if let Some(&other) = at.get(&b) {
            if other > robot && to[other] == a {
                return Err(violation(ViolationKind::EdgeSwap, time, vec![robot, other]));
            }
        }
    }
    Ok(())
}

/// Validate a single synchronous transition. `from` is assumed to be a
/// valid configuration; `to` is checked against the rotation-friendly
/// collision model: waits and 4-adjacent moves only, injective targets,
/// no obstacle entry, no two robots traversing one edge in opposite
/// directions. Moving into a simultaneously vacated cell is legal.
pub fn validate_step(
    grid: &GridMap,
    from: &[Position],
    to: &[Position],
) -> Result<(), ViolationReport> {
    validate_step_at(grid, from, to, 0)
}

/// Validate a full plan against an instance: every step legal, paths start
/// at starts, endpoints reach goals (exact id match when labeled, goal-set
/// coverage when unlabeled).
pub fn validate_plan(instance: &Instance, plan: &Plan) -> Result<(), ViolationReport> {
    assert_eq!(plan.robots(), instance.robots(), "plan must cover every robot");
    let horizon = plan.horizon();
    for (robot, path) in plan.paths.iter().enumerate() {
        assert_eq!(path.len(), horizon + 1, "ragged plan");
        if path[0] != instance.starts[robot] {
            return Err(violation(ViolationKind::WrongEndpoint, 0, vec![robot]));
        }
    }
    let mut from = plan.config_at(0);
    for t in 1..=horizon {
        let to = plan.config_at(t);
        validate_step_at(&instance.grid, &from, &to, t)?;
        from = to;
    }
    if instance.labeled {
        for (robot, path) in plan.paths.iter().enumerate() {
            if *path.last().unwrap() != instance.goals[robot] {
                return Err(violation(ViolationKind::WrongEndpoint, horizon, vec![robot]));
            }
        }
    } else {
        let goal_set: HashSet<Position> = instance.goals.iter().copied().collect();
        let mut end_set: HashSet<Position> = HashSet::with_capacity(plan.robots());
        for path in &plan.paths {
            end_set.insert(*path.last().unwrap());
        }
        if end_set != goal_set {
            let bad = plan
                .paths
                .iter()
                .position(|p| !goal_set.contains(p.last().unwrap()))
                .unwrap_or(0);
            return Err(violation(ViolationKind::WrongEndpoint, horizon, vec![bad]));
        }
    }
    Ok(())
}

/// Last timestep at which any robot moves; 0 for all-wait plans.
pub fn makespan(plan: &Plan) -> usize {
    let horizon = plan.horizon();
    for t in (1..=horizon).rev() {
        if plan.paths.iter().any(|path| path[t] != path[t - 1]) {
            return t;
        }
    }
    0
}

/// Longest start-goal Manhattan distance; only defined for labeled
/// instances (there is no paired distance for anonymous robots).
pub fn manhattan_lower_bound(instance: &Instance) -> Result<i32, GridError> {
    if !instance.labeled {
        return Err(GridError::UnlabeledLowerBound);
    }
    Ok(instance
        .starts
        .iter()
        .zip(instance.goals.iter())
        .map(|(s, g)| s.manhattan(g))
        .max()
        .unwrap_or(0))
}

/// Makespan over the Manhattan lower bound, `None` when the bound is zero.
/// Callers are expected to validate the plan first.
pub fn optimality_ratio(plan: &Plan, instance: &Instance) -> Option<f64> {
    let bound = manhattan_lower_bound(instance).ok()?;
    if bound == 0 {
        return None;
    }
    Some(makespan(plan) as f64 / bound as f64)
}
