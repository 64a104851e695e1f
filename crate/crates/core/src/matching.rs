//! Optimized matching selection: linear bottleneck assignment (the LBA
//! heuristic behind RTH-LBA) and the integer-programming assignment model
//! (construction, LP export, and a tiny exact solver used as an oracle).
//!
//! Everything here works on a projection of the instance: robots reduced
//! to (current line, color, start/goal coordinate along the shuffle axis),
//! plus the axis coordinate of every matching slot.

use crate::bipartite::max_bipartite_matching;
use crate::rubik::{decompose_matchings, ColorMultigraph, MatchingSet, RubikError};
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatchingOptError {
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("projection is not regular: every line must hold one robot per slot")]
    NonRegular,
    #[error("model too large for the exact solver ({lines} lines, {robots} robots)")]
    SizeLimit { lines: usize, robots: usize },
    #[error("assignment infeasible under the spread constraints")]
    Infeasible,
    #[error("lp parse error at line {0}: {1}")]
    Parse(usize, String),
}

/// Cost of parking a robot on the line with axis coordinate `line_coord`:
/// `lambda * |line - start| + (1 - lambda) * |line - goal|`.
#[derive(Clone, Copy, Debug)]
pub struct LineCost {
    pub lambda: f64,
}

impl LineCost {
    pub fn new(lambda: f64) -> Self {
        assert!((0.0..=1.0).contains(&lambda));
        LineCost { lambda }
    }

    pub fn cost(&self, line_coord: i32, start_coord: i32, goal_coord: i32) -> f64 {
        self.lambda * (line_coord - start_coord).abs() as f64
            + (1.0 - self.lambda) * (line_coord - goal_coord).abs() as f64
    }
}

/// LBA and the IP model use the integer endpoints of the lambda range,
/// where costs stay integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lambda {
    /// lambda = 0: cost is distance from line to goal coordinate.
    Zero,
    /// lambda = 1: cost is distance from line to start coordinate.
    One,
}

impl Lambda {
    fn cost(self, line_coord: i32, start: i32, goal: i32) -> u64 {
        match self {
            Lambda::Zero => (line_coord - goal).abs() as u64,
            Lambda::One => (line_coord - start).abs() as u64,
        }
    }
}

/// One robot (or virtual filler) projected onto the shuffle axis.
#[derive(Clone, Copy, Debug)]
pub struct RobotProjection {
    pub current_line: usize,
    pub color: usize,
    pub start_coord: i32,
    pub goal_coord: i32,
}

/// Matching problem over `lines` current lines (= colors) and
/// `slots.len()` matchings to extract; regularity requires one robot per
/// (line, slot) pair and per (color, slot) pair.
#[derive(Clone, Debug)]
pub struct MatchingProblem {
    pub lines: usize,
    /// Axis coordinate of each matching slot.
    pub slots: Vec<i32>,
    pub robots: Vec<RobotProjection>,
}

impl MatchingProblem {
    fn check_regular(&self) -> Result<(), MatchingOptError> {
        let m = self.slots.len();
        let mut line_deg = vec![0usize; self.lines];
        let mut color_deg = vec![0usize; self.lines];
        for r in &self.robots {
            if r.current_line >= self.lines || r.color >= self.lines {
                return Err(MatchingOptError::NonRegular);
            }
            line_deg[r.current_line] += 1;
            color_deg[r.color] += 1;
        }
        if line_deg.iter().any(|&d| d != m) || color_deg.iter().any(|&d| d != m) {
            return Err(MatchingOptError::NonRegular);
        }
        Ok(())
    }

    fn cost(&self, slot: usize, robot: usize, lambda: Lambda) -> u64 {
        let r = &self.robots[robot];
        lambda.cost(self.slots[slot], r.start_coord, r.goal_coord)
    }

    /// Plain (unoptimized) decomposition of the same projection.
    pub fn plain_matchings(&self) -> Result<MatchingSet, MatchingOptError> {
        let mut edges: Vec<(usize, usize, usize)> = self
            .robots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.color, r.current_line, i))
            .collect();
        edges.sort_unstable();
        let graph = ColorMultigraph { colors: self.lines, lines: self.lines, edges };
        decompose_matchings(&graph).map_err(|e| match e {
            RubikError::NonRegular | RubikError::ExtractionFailed => MatchingOptError::NonRegular,
            _ => MatchingOptError::Infeasible,
        })
    }
}

#[derive(Clone, Debug)]
pub struct WeightedBipartite {
    pub n_left: usize,
    pub n_right: usize,
    /// weight[l][r]; `None` where no edge exists.
    pub weight: Vec<Vec<Option<u64>>>,
}

impl WeightedBipartite {
    pub fn from_matrix(weight: Vec<Vec<Option<u64>>>) -> Self {
        let n_left = weight.len();
        let n_right = weight.first().map_or(0, |row| row.len());
        WeightedBipartite { n_left, n_right, weight }
    }
}

/// Perfect matching minimizing the maximum edge weight: binary search over
/// the sorted distinct weights, testing each threshold with a maximum
/// matching. Returns (left -> right assignment, bottleneck value).
pub fn bottleneck_assignment(
    g: &WeightedBipartite,
) -> Result<(Vec<usize>, u64), MatchingOptError> {
    let n = g.n_left;
    if n == 0 {
        return Ok((vec![], 0));
    }
    if g.n_right != n {
        return Err(MatchingOptError::NoPerfectMatching);
    }
    let mut weights: Vec<u64> = g
        .weight
        .iter()
        .flat_map(|row| row.iter().filter_map(|w| *w))
        .collect();
    weights.sort_unstable();
    weights.dedup();
    if weights.is_empty() {
        return Err(MatchingOptError::NoPerfectMatching);
    }

    let feasible = |threshold: u64| -> Option<Vec<usize>> {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|l| {
                (0..n)
                    .filter(|&r| g.weight[l][r].map_or(false, |w| w <= threshold))
                    .collect()
            })
            .collect();
        let (m, size) = max_bipartite_matching(n, n, &adj);
        if size == n {
            Some(m.into_iter().map(|r| r.unwrap()).collect())
        } else {
            None
        }
    };

    if feasible(*weights.last().unwrap()).is_none() {
        return Err(MatchingOptError::NoPerfectMatching);
    }
    let mut lo = 0usize;
    let mut hi = weights.len() - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(weights[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let value = weights[lo];
    Ok((feasible(value).unwrap(), value))
}

#[derive(Clone, Debug)]
pub struct LbaResult {
    /// Matchings in slot order: `matchings[k]` holds (color, line, robot id).
    pub matchings: MatchingSet,
    /// Bottleneck cost of the stage-2 slot assignment.
    pub stage2_bottleneck: u64,
    /// True when a stage became infeasible and the plain decomposition was
    /// used instead.
    pub used_fallback: bool,
}

/// Two-stage LBA matching: extract one bottleneck-minimal matching per
/// slot, greedily deleting assigned robots, then reassign whole matchings
/// to slots with one more bottleneck assignment whose cost is the worst
/// robot cost in the matching. Falls back to the plain decomposition when
/// a stage turns infeasible.
pub fn lba_matchings(
    problem: &MatchingProblem,
    lambda: Lambda,
) -> Result<LbaResult, MatchingOptError> {
    problem.check_regular()?;
    if problem.lines == 0 || problem.slots.is_empty() {
        return Ok(LbaResult {
            matchings: MatchingSet { matchings: vec![] },
            stage2_bottleneck: 0,
            used_fallback: false,
        });
    }
    match lba_stages(problem, lambda) {
        Some(result) => Ok(result),
        None => {
            let matchings = problem.plain_matchings()?;
            let bottleneck = assignment_bottleneck(&matchings, problem, lambda);
            Ok(LbaResult { matchings, stage2_bottleneck: bottleneck, used_fallback: true })
        }
    }
}

fn lba_stages(problem: &MatchingProblem, lambda: Lambda) -> Option<LbaResult> {
    let n = problem.lines;
    let m = problem.slots.len();
    let mut assigned = vec![false; problem.robots.len()];
    // robots grouped by (line, color), ids ascending
    let mut pool: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for (i, r) in problem.robots.iter().enumerate() {
        pool[r.current_line][r.color].push(i);
    }

    // Stage 1: one bottleneck matching per slot, deleting chosen robots.
    let mut matchings: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(m);
    for k in 0..m {
        let mut weight = vec![vec![None; n]; n];
        let mut pick = vec![vec![usize::MAX; n]; n];
        for line in 0..n {
            for color in 0..n {
                let mut best: Option<(u64, usize)> = None;
                for &i in &pool[line][color] {
                    if assigned[i] {
                        continue;
                    }
                    let c = problem.cost(k, i, lambda);
                    if best.map_or(true, |(bc, bi)| (c, i) < (bc, bi)) {
                        best = Some((c, i));
                    }
                }
                if let Some((c, i)) = best {
                    weight[line][color] = Some(c);
                    pick[line][color] = i;
                }
            }
        }
        let g = WeightedBipartite::from_matrix(weight);
        let (line_to_color, _) = bottleneck_assignment(&g).ok()?;
        let mut matching = Vec::with_capacity(n);
        for (line, &color) in line_to_color.iter().enumerate() {
            let robot = pick[line][color];
            assigned[robot] = true;
            matching.push((color, line, robot));
        }
        matching.sort_unstable();
        matchings.push(matching);
    }

    // Stage 2: reassign whole matchings to slots.
    let weight: Vec<Vec<Option<u64>>> = matchings
        .iter()
        .map(|matching| {
            (0..m)
                .map(|k| {
                    Some(
                        matching
                            .iter()
                            .map(|&(_, _, robot)| problem.cost(k, robot, lambda))
                            .max()
                            .unwrap_or(0),
                    )
                })
                .collect()
        })
        .collect();
    let g = WeightedBipartite::from_matrix(weight);
    let (matching_to_slot, bottleneck) = bottleneck_assignment(&g).ok()?;
    let mut ordered: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); m];
    for (mi, &slot) in matching_to_slot.iter().enumerate() {
        ordered[slot] = matchings[mi].clone();
    }
    Some(LbaResult {
        matchings: MatchingSet { matchings: ordered },
        stage2_bottleneck: bottleneck,
        used_fallback: false,
    })
}

/// Worst per-slot cost of an already-ordered matching set; the quantity
/// LBA's stage 2 minimizes, reusable to score plain decompositions.
pub fn assignment_bottleneck(
    matchings: &MatchingSet,
    problem: &MatchingProblem,
    lambda: Lambda,
) -> u64 {
    matchings
        .matchings
        .iter()
        .enumerate()
        .flat_map(|(k, m)| m.iter().map(move |&(_, _, robot)| problem.cost(k, robot, lambda)))
        .max()
        .unwrap_or(0)
}

/// Binary assignment model: x[k][i] = 1 when robot i parks on line-slot k.
/// Objective: minimize (max over assigned cost0) + (max over assigned
/// cost1), linearized with two auxiliary variables bounded below by every
/// cost term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpModel {
    pub lines: usize,
    pub robots: usize,
    pub cost0: Vec<Vec<u64>>,
    pub cost1: Vec<Vec<u64>>,
    pub robot_color: Vec<usize>,
    pub robot_current: Vec<usize>,
    pub n_colors: usize,
    pub n_currents: usize,
}

impl IpModel {
    pub fn binary_variables(&self) -> usize {
        self.lines * self.robots
    }

    /// Constraint row counts: (one per robot, one per (line, color),
    /// one per (current line, line)).
    pub fn constraint_counts(&self) -> (usize, usize, usize) {
        (self.robots, self.lines * self.n_colors, self.n_currents * self.lines)
    }

    /// Direct minimax objective of a 0/1 assignment (robot -> slot);
    /// equals the linearized objective at its optimum.
    pub fn eval_assignment(&self, assignment: &[usize]) -> u64 {
        let z0 = assignment
            .iter()
            .enumerate()
            .map(|(i, &k)| self.cost0[k][i])
            .max()
            .unwrap_or(0);
        let z1 = assignment
            .iter()
            .enumerate()
            .map(|(i, &k)| self.cost1[k][i])
            .max()
            .unwrap_or(0);
        z0 + z1
    }

    pub fn assignment_feasible(&self, assignment: &[usize]) -> bool {
        let mut color_used = vec![false; self.lines * self.n_colors];
        let mut current_used = vec![0usize; self.n_currents * self.lines];
        let mut group_size = vec![0usize; self.n_currents];
        for (i, &k) in assignment.iter().enumerate() {
            let ci = k * self.n_colors + self.robot_color[i];
            if color_used[ci] {
                return false;
            }
            color_used[ci] = true;
            current_used[self.robot_current[i] * self.lines + k] += 1;
            group_size[self.robot_current[i]] += 1;
        }
        // populated current lines must spread exactly one robot per slot
        (0..self.n_currents).all(|c| {
            group_size[c] == 0
                || (0..self.lines).all(|k| current_used[c * self.lines + k] == 1)
        })
    }
}

pub fn build_ip_model(problem: &MatchingProblem) -> IpModel {
    let lines = problem.slots.len();
    let robots = problem.robots.len();
    let cost0 = (0..lines)
        .map(|k| (0..robots).map(|i| problem.cost(k, i, Lambda::Zero)).collect())
        .collect();
    let cost1 = (0..lines)
        .map(|k| (0..robots).map(|i| problem.cost(k, i, Lambda::One)).collect())
        .collect();
    IpModel {
        lines,
        robots,
        cost0,
        cost1,
        robot_color: problem.robots.iter().map(|r| r.color).collect(),
        robot_current: problem.robots.iter().map(|r| r.current_line).collect(),
        n_colors: problem.lines,
        n_currents: problem.lines,
    }
}

/// Emit the model as LP-format text (objective, constraints, bounds,
/// binaries sections). Byte-stable for identical models.
pub fn export_lp(model: &IpModel) -> String {
    let mut out = String::new();
    out.push_str("\\ mrpp line assignment model\n");
    writeln!(out, "\\ lines={} robots={}", model.lines, model.robots).unwrap();
    out.push_str("Minimize\n obj: z0 + z1\nSubject To\n");
    for i in 0..model.robots {
        let terms: Vec<String> = (0..model.lines).map(|k| format!("x_{k}_{i}")).collect();
        writeln!(out, " assign_{i}: {} = 1", terms.join(" + ")).unwrap();
    }
    for k in 0..model.lines {
        for t in 0..model.n_colors {
            let terms: Vec<String> = (0..model.robots)
                .filter(|&i| model.robot_color[i] == t)
                .map(|i| format!("x_{k}_{i}"))
                .collect();
            if !terms.is_empty() {
                writeln!(out, " color_{k}_{t}: {} <= 1", terms.join(" + ")).unwrap();
            }
        }
    }
    for c in 0..model.n_currents {
        for k in 0..model.lines {
            let terms: Vec<String> = (0..model.robots)
                .filter(|&i| model.robot_current[i] == c)
                .map(|i| format!("x_{k}_{i}"))
                .collect();
            if !terms.is_empty() {
                writeln!(out, " spread_{c}_{k}: {} = 1", terms.join(" + ")).unwrap();
            }
        }
    }
    for k in 0..model.lines {
        for i in 0..model.robots {
            if model.cost0[k][i] > 0 {
                writeln!(out, " lin0_{k}_{i}: {} x_{k}_{i} - z0 <= 0", model.cost0[k][i]).unwrap();
            }
            if model.cost1[k][i] > 0 {
                writeln!(out, " lin1_{k}_{i}: {} x_{k}_{i} - z1 <= 0", model.cost1[k][i]).unwrap();
            }
        }
    }
    out.push_str("Bounds\n z0 >= 0\n z1 >= 0\nBinaries\n");
    for k in 0..model.lines {
        for i in 0..model.robots {
            writeln!(out, " x_{k}_{i}").unwrap();
        }
    }
    out.push_str("End\n");
    out
}

/// Parse LP text produced by [`export_lp`] back into an equal model.
pub fn parse_lp(text: &str) -> Result<IpModel, MatchingOptError> {
    let mut lines_count = 0usize;
    let mut robots_count = 0usize;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (num, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('\\') || trimmed.is_empty() {
            continue;
        }
        rows.push((num + 1, trimmed));
    }
    for &(_, row) in &rows {
        if let Some(name) = row.strip_prefix("x_") {
            if let Some((k, i)) = name.split_once('_') {
                if let (Ok(k), Ok(i)) = (k.parse::<usize>(), i.parse::<usize>()) {
                    lines_count = lines_count.max(k + 1);
                    robots_count = robots_count.max(i + 1);
                }
            }
        }
    }
    let mut cost0 = vec![vec![0u64; robots_count]; lines_count];
    let mut cost1 = vec![vec![0u64; robots_count]; lines_count];
    let mut robot_color = vec![usize::MAX; robots_count];
    let mut robot_current = vec![usize::MAX; robots_count];
    let mut n_colors = 0usize;
    let mut n_currents = 0usize;

    fn parse_var(tok: &str, line: usize) -> Result<(usize, usize), MatchingOptError> {
        let body = tok
            .strip_prefix("x_")
            .ok_or_else(|| MatchingOptError::Parse(line, format!("expected x var, got {tok}")))?;
        let (k, i) = body
            .split_once('_')
            .ok_or_else(|| MatchingOptError::Parse(line, "malformed x var".into()))?;
        Ok((
            k.parse().map_err(|_| MatchingOptError::Parse(line, "bad line index".into()))?,
            i.parse().map_err(|_| MatchingOptError::Parse(line, "bad robot index".into()))?,
        ))
    }

    for &(num, row) in &rows {
        let Some((label, body)) = row.split_once(':') else { continue };
        let toks: Vec<&str> = body.split_whitespace().collect();
        if let Some(rest) = label.strip_prefix("color_") {
            let (k, t) = rest
                .split_once('_')
                .ok_or_else(|| MatchingOptError::Parse(num, "bad color label".into()))?;
            let k: usize =
                k.parse().map_err(|_| MatchingOptError::Parse(num, "bad color row".into()))?;
            let t: usize =
                t.parse().map_err(|_| MatchingOptError::Parse(num, "bad color".into()))?;
            n_colors = n_colors.max(t + 1);
            if k == 0 {
                for tok in toks.iter().filter(|t| t.starts_with("x_")) {
                    let (_, i) = parse_var(tok, num)?;
                    robot_color[i] = t;
                }
            }
        } else if let Some(rest) = label.strip_prefix("spread_") {
            let (c, k) = rest
                .split_once('_')
                .ok_or_else(|| MatchingOptError::Parse(num, "bad spread label".into()))?;
            let c: usize =
                c.parse().map_err(|_| MatchingOptError::Parse(num, "bad current".into()))?;
            let k: usize =
                k.parse().map_err(|_| MatchingOptError::Parse(num, "bad spread row".into()))?;
            n_currents = n_currents.max(c + 1);
            if k == 0 {
                for tok in toks.iter().filter(|t| t.starts_with("x_")) {
                    let (_, i) = parse_var(tok, num)?;
                    robot_current[i] = c;
                }
            }
        } else if label.starts_with("lin0_") || label.starts_with("lin1_") {
            if toks.len() < 2 {
                return Err(MatchingOptError::Parse(num, "short lin row".into()));
            }
            let coef: u64 = toks[0]
                .parse()
                .map_err(|_| MatchingOptError::Parse(num, "bad coefficient".into()))?;
            let (k, i) = parse_var(toks[1], num)?;
            if label.starts_with("lin0_") {
                cost0[k][i] = coef;
            } else {
                cost1[k][i] = coef;
            }
        }
    }
    if robots_count > 0
        && (robot_color.contains(&usize::MAX) || robot_current.contains(&usize::MAX))
    {
        return Err(MatchingOptError::Parse(0, "missing membership rows".into()));
    }
    Ok(IpModel {
        lines: lines_count,
        robots: robots_count,
        cost0,
        cost1,
        robot_color,
        robot_current,
        n_colors,
        n_currents,
    })
}

const EXACT_MAX_LINES: usize = 8;
const EXACT_MAX_ROBOTS: usize = 24;

/// Provably optimal assignment for tiny models via branch and bound,
/// capped at 8 lines / 24 robots.
pub fn solve_ip_exact_small(model: &IpModel) -> Result<(Vec<usize>, u64), MatchingOptError> {
    if model.lines > EXACT_MAX_LINES || model.robots > EXACT_MAX_ROBOTS {
        return Err(MatchingOptError::SizeLimit { lines: model.lines, robots: model.robots });
    }
    if model.robots == 0 {
        return Ok((vec![], 0));
    }
    // The spread constraints force each current-line group to biject onto
    // the slots, so search group by group over slot permutations.
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); model.n_currents];
    for i in 0..model.robots {
        groups[model.robot_current[i]].push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_iter().filter(|g| !g.is_empty()).collect();
    if groups.iter().any(|g| g.len() != model.lines) {
        return Err(MatchingOptError::Infeasible);
    }

    struct Search<'a> {
        model: &'a IpModel,
        groups: &'a [Vec<usize>],
        best: u64,
        best_assign: Option<Vec<usize>>,
        assign: Vec<usize>,
        color_used: Vec<bool>,
        slot_used: Vec<Vec<bool>>,
    }

    impl Search<'_> {
        fn dfs(&mut self, group: usize, pos: usize, z0: u64, z1: u64) {
            if z0 + z1 >= self.best {
                return;
            }
            if group == self.groups.len() {
                self.best = z0 + z1;
                self.best_assign = Some(self.assign.clone());
                return;
            }
            if pos == self.groups[group].len() {
                self.dfs(group + 1, 0, z0, z1);
                return;
            }
            let i = self.groups[group][pos];
            for k in 0..self.model.lines {
                if self.slot_used[group][k] {
                    continue;
                }
                let ci = k * self.model.n_colors + self.model.robot_color[i];
                if self.color_used[ci] {
                    continue;
                }
                self.slot_used[group][k] = true;
                self.color_used[ci] = true;
                self.assign[i] = k;
                self.dfs(
                    group,
                    pos + 1,
                    z0.max(self.model.cost0[k][i]),
                    z1.max(self.model.cost1[k][i]),
                );
                self.slot_used[group][k] = false;
                self.color_used[ci] = false;
            }
        }
    }

    let n_groups = groups.len();
    let mut search = Search {
        model,
        groups: &groups,
        best: u64::MAX,
        best_assign: None,
        assign: vec![0; model.robots],
        color_used: vec![false; model.lines * model.n_colors],
        slot_used: vec![vec![false; model.lines]; n_groups],
    };
    search.dfs(0, 0, 0, 0);
    let assignment = search.best_assign.ok_or(MatchingOptError::Infeasible)?;
    debug_assert!(model.assignment_feasible(&assignment));
    let objective = model.eval_assignment(&assignment);
    Ok((assignment, objective))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense(weights: &[&[u64]]) -> WeightedBipartite {
        WeightedBipartite::from_matrix(
            weights.iter().map(|row| row.iter().map(|&w| Some(w)).collect()).collect(),
        )
    }

    pub(crate) fn exhaustive_bottleneck(w: &[Vec<u64>]) -> u64 {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(w.len())
            .into_iter()
            .map(|p| p.iter().enumerate().map(|(l, &r)| w[l][r]).max().unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn diagonal_beats_large_offdiagonal() {
        let g = dense(&[&[0, 9], &[9, 0]]);
        let (m, v) = bottleneck_assignment(&g).unwrap();
        assert_eq!(v, 0);
        assert_eq!(m, vec![0, 1]);
    }

    #[test]
    fn antidiagonal_beats_diagonal() {
        let g = dense(&[&[1, 2], &[2, 4]]);
        let (m, v) = bottleneck_assignment(&g).unwrap();
        assert_eq!(v, 2);
        assert_eq!(m, vec![1, 0]);
    }

    #[test]
    fn random_5x5_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let w: Vec<Vec<u64>> =
                (0..5).map(|_| (0..5).map(|_| rng.gen_range(0..50)).collect()).collect();
            let g = WeightedBipartite::from_matrix(
                w.iter().map(|row| row.iter().map(|&x| Some(x)).collect()).collect(),
            );
            let (_, v) = bottleneck_assignment(&g).unwrap();
            assert_eq!(v, exhaustive_bottleneck(&w));
        }
    }

    #[test]
    fn missing_edges_can_make_matching_impossible() {
        let g = WeightedBipartite::from_matrix(vec![vec![Some(1), None], vec![Some(2), None]]);
        assert_eq!(bottleneck_assignment(&g).unwrap_err(), MatchingOptError::NoPerfectMatching);
    }

    /// Regular random problem: m rounds of random color permutations keep
    /// per-line and per-color counts equal to the slot count.
    pub(crate) fn random_problem(
        n: usize,
        m: usize,
        span: i32,
        rng: &mut ChaCha8Rng,
    ) -> MatchingProblem {
        use rand::seq::SliceRandom;
        let mut robots = Vec::new();
        for _ in 0..m {
            let mut colors: Vec<usize> = (0..n).collect();
            colors.shuffle(rng);
            for (line, &color) in colors.iter().enumerate() {
                robots.push(RobotProjection {
                    current_line: line,
                    color,
                    start_coord: rng.gen_range(0..span),
                    goal_coord: rng.gen_range(0..span),
                });
            }
        }
        let slots = (0..m as i32).map(|k| k * (span / m as i32).max(1)).collect();
        MatchingProblem { lines: n, slots, robots }
    }

    #[test]
    fn aligned_lines_give_zero_bottleneck() {
        let n = 3;
        let mut robots = Vec::new();
        for line in 0..n {
            for k in 0..n {
                robots.push(RobotProjection {
                    current_line: line,
                    color: line,
                    start_coord: k as i32,
                    goal_coord: k as i32,
                });
            }
        }
        let problem = MatchingProblem { lines: n, slots: vec![0, 1, 2], robots };
        let result = lba_matchings(&problem, Lambda::Zero).unwrap();
        assert!(!result.used_fallback);
        assert_eq!(result.stage2_bottleneck, 0);
        for m in &result.matchings.matchings {
            for &(color, line, _) in m {
                assert_eq!(color, line);
            }
        }
    }

    #[test]
    fn lba_not_worse_than_plain_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let problem = random_problem(4, 3, 12, &mut rng);
            let lba = lba_matchings(&problem, Lambda::Zero).unwrap();
            let mut seen = vec![false; problem.robots.len()];
            for m in &lba.matchings.matchings {
                let mut colors: Vec<usize> = m.iter().map(|e| e.0).collect();
                let mut lines: Vec<usize> = m.iter().map(|e| e.1).collect();
                colors.sort_unstable();
                lines.sort_unstable();
                assert_eq!(colors, (0..4).collect::<Vec<_>>());
                assert_eq!(lines, (0..4).collect::<Vec<_>>());
                for &(_, _, r) in m {
                    assert!(!seen[r]);
                    seen[r] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));

            let plain = problem.plain_matchings().unwrap();
            let plain_cost = assignment_bottleneck(&plain, &problem, Lambda::Zero);
            assert!(lba.stage2_bottleneck <= plain_cost);
        }
    }

    #[test]
    fn ip_model_counts() {
        let problem = MatchingProblem {
            lines: 1,
            slots: vec![0, 1, 2],
            robots: (0..3)
                .map(|k| RobotProjection {
                    current_line: 0,
                    color: 0,
                    start_coord: k,
                    goal_coord: 2 - k,
                })
                .collect(),
        };
        let model = build_ip_model(&problem);
        assert_eq!(model.binary_variables(), 9);
        let (per_robot, _, _) = model.constraint_counts();
        assert_eq!(per_robot, 3);
    }

    #[test]
    fn single_robot_single_line_objective_forced() {
        let problem = MatchingProblem {
            lines: 1,
            slots: vec![4],
            robots: vec![RobotProjection {
                current_line: 0,
                color: 0,
                start_coord: 1,
                goal_coord: 7,
            }],
        };
        let model = build_ip_model(&problem);
        let (assign, obj) = solve_ip_exact_small(&model).unwrap();
        assert_eq!(assign, vec![0]);
        assert_eq!(obj, (4 - 1) + (7 - 4));
    }

    #[test]
    fn lp_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let problem = random_problem(3, 3, 9, &mut rng);
        let model = build_ip_model(&problem);
        let text = export_lp(&model);
        let back = parse_lp(&text).unwrap();
        assert_eq!(back, model);
        assert_eq!(export_lp(&back), text);
    }

    #[test]
    fn empty_model_exports_header_only() {
        let model = build_ip_model(&MatchingProblem { lines: 0, slots: vec![], robots: vec![] });
        let text = export_lp(&model);
        assert!(text.contains("Minimize"));
        assert!(text.ends_with("End\n"));
        assert!(!text.contains("assign_"));
    }

    #[test]
    fn exact_solver_trivial_and_symmetric_cases() {
        let p1 = MatchingProblem {
            lines: 1,
            slots: vec![0],
            robots: vec![RobotProjection {
                current_line: 0,
                color: 0,
                start_coord: 0,
                goal_coord: 0,
            }],
        };
        let (a, obj) = solve_ip_exact_small(&build_ip_model(&p1)).unwrap();
        assert_eq!((a, obj), (vec![0], 0));

        // 2 lines, 2 robots, symmetric costs: both assignments give the same
        // unique objective value.
        let p2 = MatchingProblem {
            lines: 2,
            slots: vec![0, 2],
            robots: vec![
                RobotProjection { current_line: 0, color: 0, start_coord: 0, goal_coord: 2 },
                RobotProjection { current_line: 0, color: 1, start_coord: 2, goal_coord: 0 },
            ],
        };
        let model = build_ip_model(&p2);
        let (_, obj) = solve_ip_exact_small(&model).unwrap();
        // either assignment leaves one phase at distance 2 and the other at 0
        assert_eq!(obj, 2);
    }

    #[test]
    fn exact_dominates_lba_on_small_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            // 2 current lines x 4 slots = 8 robots... lines must equal slots
            // for the exact bijection, so use 4 lines, 2 groups of 4.
            let problem = random_problem(2, 4, 10, &mut rng);
            let model = {
                // regroup: treat the 4 slots as lines; robots' current lines
                // are the 2 groups, each sized 4.
                build_ip_model(&problem)
            };
            let (_, ip_obj) = match solve_ip_exact_small(&model) {
                Ok(v) => v,
                Err(MatchingOptError::Infeasible) => continue,
                Err(e) => panic!("{e}"),
            };
            let lba = lba_matchings(&problem, Lambda::Zero).unwrap();
            let mut assign = vec![0usize; problem.robots.len()];
            for (k, m) in lba.matchings.matchings.iter().enumerate() {
                for &(_, _, robot) in m {
                    assign[robot] = k;
                }
            }
            let lba_obj = model.eval_assignment(&assign);
            assert!(ip_obj <= lba_obj, "exact {ip_obj} should be <= lba {lba_obj}");
        }
    }

    #[test]
    fn linearization_matches_direct_eval_by_enumeration() {
        let problem = MatchingProblem {
            lines: 2,
            slots: vec![0, 3],
            robots: vec![
                RobotProjection { current_line: 0, color: 0, start_coord: 1, goal_coord: 2 },
                RobotProjection { current_line: 0, color: 1, start_coord: 3, goal_coord: 0 },
            ],
        };
        let model = build_ip_model(&problem);
        for assign in [[0usize, 1], [1, 0]] {
            if !model.assignment_feasible(&assign) {
                continue;
            }
            let z0 = assign.iter().enumerate().map(|(i, &k)| model.cost0[k][i]).max().unwrap();
            let z1 = assign.iter().enumerate().map(|(i, &k)| model.cost1[k][i]).max().unwrap();
            assert_eq!(model.eval_assignment(&assign), z0 + z1);
        }
    }

    #[test]
    fn size_limit_enforced() {
        let problem = MatchingProblem {
            lines: 1,
            slots: (0..9).collect::<Vec<i32>>(),
            robots: (0..9)
                .map(|_| RobotProjection {
                    current_line: 0,
                    color: 0,
                    start_coord: 0,
                    goal_coord: 0,
                })
                .collect(),
        };
        let model = build_ip_model(&problem);
        assert!(matches!(solve_ip_exact_small(&model), Err(MatchingOptError::SizeLimit { .. })));
    }
}
