//! Unlabeled (anonymous) routing via max flow on a time-expanded graph,
//! plus a brute-force joint-state BFS oracle for tiny instances.
//!
//! Every cell-time vertex is split to enforce unit occupancy; every
//! undirected grid edge gets one shared unit-capacity arc per timestep, so
//! two robots can never traverse the same edge in opposite directions in
//! one step (cycle rotations touch each edge once and stay legal). The
//! minimum horizon is found by searching upward from the distance lower
//! bound; feasibility is monotone in the horizon. Augmentation uses
//! shortest paths phase by phase (Dinic) with deterministic arc order, so
//! decoded plans are reproducible.

use crate::grid::{GridMap, Plan, Position};
use std::collections::VecDeque;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error)]
pub enum FlowError {
    #[error("sink capacity {capacity} below robot count {robots}")]
    SinkCapacity { capacity: usize, robots: usize },
    #[error("no feasible horizon up to {cap} (disconnected instance?)")]
    Infeasible { cap: usize },
    #[error("instance too large for the brute-force oracle")]
    OracleSizeLimit,
    #[error("start configuration invalid: {0}")]
    BadStarts(String),
}

/// Where anonymous robots may end: an explicit set of unit-capacity slots.
#[derive(Clone, Debug)]
pub struct SinkSpec {
    pub slots: Vec<Position>,
}

impl SinkSpec {
    pub fn explicit(slots: Vec<Position>) -> Self {
        SinkSpec { slots }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HorizonSearch {
    /// Try T = lb, lb+1, ...; the first feasible horizon is typically
    /// within a few steps of the bound.
    Linear,
    /// Galloping upper bound then bisection, for adversarial instances.
    Binary,
}

#[derive(Clone, Debug)]
pub struct FlowOutcome {
    pub plan: Plan,
    /// Realized endpoint slot per robot.
    pub assignment: Vec<Position>,
    pub horizon: usize,
}

const NONE: u32 = u32::MAX;

struct Dinic {
    to: Vec<u32>,
    cap: Vec<u8>,
    head: Vec<u32>,
    next: Vec<u32>,
    level: Vec<u32>,
    iter: Vec<u32>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![NONE; nodes],
            next: Vec::new(),
            level: vec![NONE; nodes],
            iter: vec![NONE; nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize) -> usize {
        let id = self.to.len();
        self.to.push(to as u32);
        self.cap.push(1);
        self.next.push(self.head[from]);
        self.head[from] = id as u32;
        self.to.push(from as u32);
        self.cap.push(0);
        self.next.push(self.head[to]);
        self.head[to] = (id + 1) as u32;
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = NONE);
        self.level[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            let mut a = self.head[u as usize];
            while a != NONE {
                let v = self.to[a as usize];
                if self.cap[a as usize] > 0 && self.level[v as usize] == NONE {
                    self.level[v as usize] = self.level[u as usize] + 1;
                    queue.push_back(v);
                }
                a = self.next[a as usize];
            }
        }
        self.level[t] != NONE
    }

    fn dfs(&mut self, u: usize, t: usize) -> bool {
        if u == t {
            return true;
        }
        while self.iter[u] != NONE {
            let a = self.iter[u] as usize;
            let v = self.to[a] as usize;
            if self.cap[a] > 0 && self.level[v] == self.level[u] + 1 && self.dfs(v, t) {
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                return true;
            }
            self.iter[u] = self.next[a];
        }
        false
    }

    fn max_flow(&mut self, s: usize, t: usize, want: usize) -> usize {
        let mut flow = 0;
        while flow < want && self.bfs(s, t) {
            for u in 0..self.head.len() {
                self.iter[u] = self.head[u];
            }
            while flow < want && self.dfs(s, t) {
                flow += 1;
            }
        }
        flow
    }
}

/// Cells, edges, and node indexing of the time-expanded graph.
struct Expansion {
    cells: Vec<Position>,
    cell_id: std::collections::HashMap<Position, usize>,
    edges: Vec<(usize, usize)>,
    horizon: usize,
}

impl Expansion {
    fn build(grid: &GridMap, horizon: usize) -> Self {
        let mut cells = Vec::with_capacity(grid.free_cell_count());
        for x in 1..=grid.rows() {
            for y in 1..=grid.cols() {
                let p = Position::new(x, y);
                if grid.is_free(p) {
                    cells.push(p);
                }
            }
        }
        let cell_id: std::collections::HashMap<Position, usize> =
            cells.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut edges = Vec::new();
        for (i, &p) in cells.iter().enumerate() {
            for q in [Position::new(p.x, p.y + 1), Position::new(p.x + 1, p.y)] {
                if let Some(&j) = cell_id.get(&q) {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Expansion { cells, cell_id, edges, horizon }
    }

    fn n_cells(&self) -> usize {
        self.cells.len()
    }

    // node layout: [source, sink, cell in/out per (t, c), edge in/out per (t, e)]
    fn source(&self) -> usize {
        0
    }
    fn sink(&self) -> usize {
        1
    }
    fn cin(&self, c: usize, t: usize) -> usize {
        2 + t * 2 * self.n_cells() + 2 * c
    }
    fn cout(&self, c: usize, t: usize) -> usize {
        self.cin(c, t) + 1
    }
    fn ein(&self, e: usize, t: usize) -> usize {
        2 + (self.horizon + 1) * 2 * self.n_cells() + t * 2 * self.edges.len() + 2 * e
    }
    fn eout(&self, e: usize, t: usize) -> usize {
        self.ein(e, t) + 1
    }
    fn node_count(&self) -> usize {
        2 + (self.horizon + 1) * 2 * self.n_cells() + self.horizon * 2 * self.edges.len()
    }
}

struct BuiltGraph {
    dinic: Dinic,
    exp: Expansion,
    occupy: Vec<Vec<usize>>,
    wait: Vec<Vec<usize>>,
    out_of_edge: Vec<Vec<[usize; 2]>>,
}

fn build_graph(
    grid: &GridMap,
    starts: &[Position],
    sinks: &[Position],
    horizon: usize,
) -> BuiltGraph {
    let exp = Expansion::build(grid, horizon);
    let mut dinic = Dinic::new(exp.node_count());
    let t_max = horizon;
    let mut occupy = vec![vec![0usize; exp.n_cells()]; t_max + 1];
    let mut wait = vec![vec![0usize; exp.n_cells()]; t_max];
    let mut out_of_edge = vec![vec![[0usize, 0]; exp.edges.len()]; t_max];

    for &s in starts {
        let c = exp.cell_id[&s];
        dinic.add_arc(exp.source(), exp.cin(c, 0));
    }
    for t in 0..=t_max {
        for c in 0..exp.n_cells() {
            occupy[t][c] = dinic.add_arc(exp.cin(c, t), exp.cout(c, t));
        }
    }
    for t in 0..t_max {
        for c in 0..exp.n_cells() {
            wait[t][c] = dinic.add_arc(exp.cout(c, t), exp.cin(c, t + 1));
        }
        for (e, &(a, b)) in exp.edges.iter().enumerate() {
            dinic.add_arc(exp.cout(a, t), exp.ein(e, t));
            dinic.add_arc(exp.cout(b, t), exp.ein(e, t));
            dinic.add_arc(exp.ein(e, t), exp.eout(e, t));
            out_of_edge[t][e][0] = dinic.add_arc(exp.eout(e, t), exp.cin(a, t + 1));
            out_of_edge[t][e][1] = dinic.add_arc(exp.eout(e, t), exp.cin(b, t + 1));
        }
    }
    for &g in sinks {
        let c = exp.cell_id[&g];
        dinic.add_arc(exp.cout(c, t_max), exp.sink());
    }
    BuiltGraph { dinic, exp, occupy, wait, out_of_edge }
}

/// Largest start distance to its nearest sink (multi-source BFS); `None`
/// when some start cannot reach any sink.
fn distance_lower_bound(
    grid: &GridMap,
    starts: &[Position],
    sinks: &[Position],
) -> Option<usize> {
    let mut dist: std::collections::HashMap<Position, usize> =
        std::collections::HashMap::with_capacity(grid.free_cell_count());
    let mut queue = VecDeque::new();
    for &s in sinks {
        dist.insert(s, 0);
        queue.push_back(s);
    }
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for q in grid.neighbors4(p) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(q) {
                e.insert(d + 1);
                queue.push_back(q);
            }
        }
    }
    let mut lb = 0usize;
    for s in starts {
        match dist.get(s) {
            Some(&d) => lb = lb.max(d),
            None => return None,
        }
    }
    Some(lb)
}

fn try_horizon(
    grid: &GridMap,
    starts: &[Position],
    sinks: &[Position],
    horizon: usize,
) -> Option<FlowOutcome> {
    let n = starts.len();
    let mut g = build_graph(grid, starts, sinks, horizon);
    let flow = g.dinic.max_flow(g.exp.source(), g.exp.sink(), n);
    if flow < n {
        return None;
    }
    // decode unit paths; each saturated unit arc carries exactly one robot
    let used = |d: &Dinic, arc: usize| d.cap[arc] == 0;
    let mut consumed = vec![false; g.dinic.to.len()];
    let mut paths = Vec::with_capacity(n);
    let mut assignment = Vec::with_capacity(n);
    let edge_base: Vec<usize> = (0..horizon.max(1)).map(|t| g.exp.ein(0, t)).collect();
    for &s in starts {
        let mut c = g.exp.cell_id[&s];
        let mut path = Vec::with_capacity(horizon + 1);
        path.push(g.exp.cells[c]);
        for t in 0..horizon {
            debug_assert!(used(&g.dinic, g.occupy[t][c]));
            let w = g.wait[t][c];
            if used(&g.dinic, w) && !consumed[w] {
                consumed[w] = true;
                path.push(g.exp.cells[c]);
                continue;
            }
            // find the edge arc taken out of this cell at time t
            let mut advanced = false;
            let mut arc = g.dinic.head[g.exp.cout(c, t)];
            while arc != NONE {
                let a = arc as usize;
                arc = g.dinic.next[a];
                if a % 2 == 1 || !used(&g.dinic, a) || consumed[a] {
                    continue;
                }
                let target = g.dinic.to[a] as usize;
                let base = edge_base[t];
                if target < base || target >= base + 2 * g.exp.edges.len() {
                    continue;
                }
                let e = (target - base) / 2;
                let (a0, b0) = g.exp.edges[e];
                let other = if a0 == c { b0 } else { a0 };
                let out_arc = if g.dinic.to[g.out_of_edge[t][e][0]] as usize
                    == g.exp.cin(other, t + 1)
                {
                    g.out_of_edge[t][e][0]
                } else {
                    g.out_of_edge[t][e][1]
                };
                debug_assert!(used(&g.dinic, out_arc));
                consumed[a] = true;
                consumed[out_arc] = true;
                c = other;
                path.push(g.exp.cells[c]);
                advanced = true;
                break;
            }
            assert!(advanced, "flow decode lost a unit at t={t}");
        }
        assignment.push(*path.last().unwrap());
        paths.push(path);
    }
    Some(FlowOutcome { plan: Plan { paths }, assignment, horizon })
}

/// Minimum-horizon unlabeled routing from `starts` onto `sinks`.
pub fn min_makespan_unlabeled(
    grid: &GridMap,
    starts: &[Position],
    sinks: &SinkSpec,
    search: HorizonSearch,
) -> Result<FlowOutcome, FlowError> {
    let n = starts.len();
    if sinks.capacity() < n {
        return Err(FlowError::SinkCapacity { capacity: sinks.capacity(), robots: n });
    }
    for &s in starts {
        if !grid.is_free(s) {
            return Err(FlowError::BadStarts(format!("{s:?} not a free cell")));
        }
    }
    if n == 0 {
        return Ok(FlowOutcome { plan: Plan { paths: vec![] }, assignment: vec![], horizon: 0 });
    }
    let cap = (grid.rows() as usize) * (grid.cols() as usize) + n;
    let lb = distance_lower_bound(grid, starts, &sinks.slots)
        .ok_or(FlowError::Infeasible { cap })?;
    match search {
        HorizonSearch::Linear => {
            for t in lb..=cap {
                if let Some(outcome) = try_horizon(grid, starts, &sinks.slots, t) {
                    return Ok(outcome);
                }
            }
            Err(FlowError::Infeasible { cap })
        }
        HorizonSearch::Binary => {
            let mut hi = lb.max(1);
            let mut feasible = None;
            while hi <= cap {
                if try_horizon(grid, starts, &sinks.slots, hi).is_some() {
                    feasible = Some(hi);
                    break;
                }
                hi *= 2;
            }
            let mut hi = feasible.ok_or(FlowError::Infeasible { cap })?;
            let mut lo = lb;
            while lo < hi {
                let mid = (lo + hi) / 2;
                if try_horizon(grid, starts, &sinks.slots, mid).is_some() {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Ok(try_horizon(grid, starts, &sinks.slots, hi).expect("bisection endpoint feasible"))
        }
    }
}

/// Choose balanced/centered targets for `starts`: route onto the
/// capacitated sink family and return the realized endpoint slots together
/// with the plan that reaches them.
pub fn balanced_targets(
    grid: &GridMap,
    starts: &[Position],
    sinks: &SinkSpec,
    search: HorizonSearch,
) -> Result<FlowOutcome, FlowError> {
    min_makespan_unlabeled(grid, starts, sinks, search)
}

const ORACLE_MAX_CELLS: usize = 12;
const ORACLE_MAX_ROBOTS: usize = 4;

/// Exact minimum makespan for anonymous robots by BFS over joint
/// configurations (states canonicalized as cell sets). Grids of at most
/// 12 cells, at most 4 robots.
pub fn brute_force_unlabeled_optimal(
    grid: &GridMap,
    starts: &[Position],
    goals: &[Position],
) -> Result<usize, FlowError> {
    let cells = (grid.rows() * grid.cols()) as usize;
    if cells > ORACLE_MAX_CELLS || starts.len() > ORACLE_MAX_ROBOTS {
        return Err(FlowError::OracleSizeLimit);
    }
    let canonical = |mut v: Vec<Position>| {
        v.sort();
        v
    };
    let start = canonical(starts.to_vec());
    let goal = canonical(goals.to_vec());
    if start == goal {
        return Ok(0);
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let cap = cells + starts.len() + 2;
    for depth in 1..=cap {
        let mut next = Vec::new();
        for state in &frontier {
            for succ in anonymous_successors(grid, state) {
                if seen.insert(succ.clone()) {
                    if succ == goal {
                        return Ok(depth);
                    }
                    next.push(succ);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Err(FlowError::Infeasible { cap })
}

fn anonymous_successors(grid: &GridMap, state: &[Position]) -> Vec<Vec<Position>> {
    let n = state.len();
    let deltas = [(0, 0), (-1, 0), (1, 0), (0, -1), (0, 1)];
    let mut out = Vec::new();
    let mut dest: Vec<Position> = state.to_vec();
    fn rec(
        i: usize,
        n: usize,
        grid: &GridMap,
        state: &[Position],
        deltas: &[(i32, i32); 5],
        dest: &mut Vec<Position>,
        out: &mut Vec<Vec<Position>>,
    ) {
        if i == n {
            let mut v = dest.clone();
            v.sort();
            out.push(v);
            return;
        }
        for d in deltas {
            let q = Position::new(state[i].x + d.0, state[i].y + d.1);
            if !grid.is_free(q) {
                continue;
            }
            if dest[..i].contains(&q) {
                continue;
            }
            let swap =
                (0..i).any(|j| state[j] != dest[j] && dest[j] == state[i] && q == state[j]);
            if swap {
                continue;
            }
            dest[i] = q;
            rec(i + 1, n, grid, state, deltas, dest, out);
        }
        dest[i] = state[i];
    }
    rec(0, n, grid, state, &deltas, &mut dest, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Debug dump of the time-expanded graph structure in a stable text form:
/// a layout summary, the edge list, then one `arc from -> to` line per arc.
pub fn dump_time_expanded(
    grid: &GridMap,
    starts: &[Position],
    sinks: &SinkSpec,
    horizon: usize,
) -> String {
    let g = build_graph(grid, starts, &sinks.slots, horizon);
    let mut out = String::new();
    writeln!(
        out,
        "time-expanded horizon={} cells={} edges={} nodes={}",
        horizon,
        g.exp.n_cells(),
        g.exp.edges.len(),
        g.exp.node_count()
    )
    .unwrap();
    for (i, &(a, b)) in g.exp.edges.iter().enumerate() {
        writeln!(out, "edge {i}: {:?} - {:?}", g.exp.cells[a], g.exp.cells[b]).unwrap();
    }
    for arc in (0..g.dinic.to.len()).step_by(2) {
        writeln!(out, "arc {} -> {}", g.dinic.to[arc ^ 1], g.dinic.to[arc]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{validate_plan, Instance};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pos(x: i32, y: i32) -> Position {
        Position::new(x, y)
    }

    fn check_outcome(grid: &GridMap, starts: &[Position], sinks: &SinkSpec, out: &FlowOutcome) {
        let inst = Instance::new(grid.clone(), starts.to_vec(), out.assignment.clone(), false);
        validate_plan(&inst, &out.plan).unwrap();
        for a in &out.assignment {
            assert!(sinks.slots.contains(a));
        }
    }

    #[test]
    fn single_robot_reaches_adjacent_sink_in_one_step() {
        let grid = GridMap::new(2, 2).unwrap();
        let starts = vec![pos(1, 1)];
        let sinks = SinkSpec::explicit(vec![pos(1, 2)]);
        let out = min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear).unwrap();
        assert_eq!(out.horizon, 1);
        check_outcome(&grid, &starts, &sinks, &out);
    }

    #[test]
    fn identity_sinks_give_zero_horizon() {
        let grid = GridMap::new(3, 3).unwrap();
        let starts = vec![pos(1, 1), pos(2, 2)];
        let sinks = SinkSpec::explicit(starts.clone());
        let out = min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear).unwrap();
        assert_eq!(out.horizon, 0);
    }

    #[test]
    fn capacity_shortfall_is_rejected() {
        let grid = GridMap::new(2, 2).unwrap();
        let starts = vec![pos(1, 1), pos(2, 2)];
        let sinks = SinkSpec::explicit(vec![pos(1, 2)]);
        assert!(matches!(
            min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear),
            Err(FlowError::SinkCapacity { .. })
        ));
    }

    #[test]
    fn disconnected_instance_reports_infeasible() {
        let grid = GridMap::with_obstacles(1, 3, [pos(1, 2)]).unwrap();
        let starts = vec![pos(1, 1)];
        let sinks = SinkSpec::explicit(vec![pos(1, 3)]);
        assert!(matches!(
            min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear),
            Err(FlowError::Infeasible { .. })
        ));
    }

    #[test]
    fn corner_exchange_matches_brute_force() {
        let grid = GridMap::new(3, 3).unwrap();
        let starts = vec![pos(1, 1), pos(3, 3)];
        // exchanging corners anonymously never requires motion
        assert_eq!(
            brute_force_unlabeled_optimal(&grid, &starts, &[pos(3, 3), pos(1, 1)]).unwrap(),
            0
        );

        let goals = vec![pos(1, 3), pos(3, 1)];
        let brute = brute_force_unlabeled_optimal(&grid, &starts, &goals).unwrap();
        let sinks = SinkSpec::explicit(goals);
        let out = min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear).unwrap();
        assert_eq!(out.horizon, brute);
        check_outcome(&grid, &starts, &sinks, &out);
    }

    #[test]
    fn flow_equals_oracle_on_random_small_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for case in 0..120 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=4);
            let grid = GridMap::new(rows, cols).unwrap();
            let mut cells: Vec<Position> =
                (1..=rows).flat_map(|x| (1..=cols).map(move |y| pos(x, y))).collect();
            let n = rng.gen_range(1..=3.min(cells.len()));
            cells.shuffle(&mut rng);
            let starts: Vec<Position> = cells[..n].to_vec();
            cells.shuffle(&mut rng);
            let goals: Vec<Position> = cells[..n].to_vec();
            let brute = brute_force_unlabeled_optimal(&grid, &starts, &goals).unwrap();
            let sinks = SinkSpec::explicit(goals.clone());
            let out =
                min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear).unwrap();
            assert_eq!(out.horizon, brute, "case {case}: {starts:?} -> {goals:?}");
            check_outcome(&grid, &starts, &sinks, &out);
            let out2 =
                min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Binary).unwrap();
            assert_eq!(out2.horizon, brute);
        }
    }

    #[test]
    fn oracle_shortest_path_is_manhattan() {
        let grid = GridMap::new(3, 4).unwrap();
        assert_eq!(
            brute_force_unlabeled_optimal(&grid, &[pos(1, 1)], &[pos(3, 4)]).unwrap(),
            5
        );
    }

    #[test]
    fn oracle_size_limit() {
        let grid = GridMap::new(4, 4).unwrap();
        assert!(matches!(
            brute_force_unlabeled_optimal(&grid, &[pos(1, 1)], &[pos(4, 4)]),
            Err(FlowError::OracleSizeLimit)
        ));
    }

    #[test]
    fn crowded_corner_reaches_spread_slots() {
        let grid = GridMap::new(6, 6).unwrap();
        let starts: Vec<Position> =
            (1..=3).flat_map(|x| (1..=4).map(move |y| pos(x, y))).collect();
        let sinks = SinkSpec::explicit(
            [2, 5].iter().flat_map(|&x| (1..=6).map(move |y| pos(x, y))).collect(),
        );
        let out = min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear).unwrap();
        check_outcome(&grid, &starts, &sinks, &out);
    }

    #[test]
    fn obstacle_slots_are_never_used() {
        let obstacle = pos(2, 2);
        let grid = GridMap::with_obstacles(3, 3, [obstacle]).unwrap();
        let starts = vec![pos(1, 1), pos(3, 3)];
        let sinks = SinkSpec::explicit(vec![pos(2, 1), pos(2, 3)]);
        let out = min_makespan_unlabeled(&grid, &starts, &sinks, HorizonSearch::Linear).unwrap();
        check_outcome(&grid, &starts, &sinks, &out);
        for path in &out.plan.paths {
            assert!(path.iter().all(|&p| p != obstacle));
        }
    }

    #[test]
    fn dump_mentions_layout() {
        let grid = GridMap::new(2, 2).unwrap();
        let sinks = SinkSpec::explicit(vec![pos(2, 2)]);
        let text = dump_time_expanded(&grid, &[pos(1, 1)], &sinks, 2);
        assert!(text.starts_with("time-expanded horizon=2 cells=4 edges=4"));
    }
}
