//! Collision-free grid realizations of abstract shuffles: precomputed swap
//! gadgets, odd-even transposition sorting, highway shuffles on 3-wide
//! bands, linear-merge shuffles on 2-wide bands, and in-cell recentering.
//!
//! All primitives emit a [`MotionScript`]: a sequence of synchronized
//! steps, each a list of (from, to) cell moves. Scripts on disjoint cell
//! sets compose step-wise.

pub mod gadget;
pub mod highway;
pub mod merge;
pub mod odd_even;
pub mod recenter;

use crate::grid::{validate_step, GridMap, Position};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum MotionError {
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("step {step}: move out of empty cell {at:?}")]
    SourceEmpty { step: usize, at: Position },
    #[error("step {step}: invalid transition: {report}")]
    InvalidStep { step: usize, report: crate::grid::ViolationReport },
    #[error("cell capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("bad targets: {0}")]
    BadTargets(String),
    #[error("script exceeded its length bound: {got} > {bound} ({context})")]
    BoundExceeded { got: usize, bound: usize, context: String },
    #[error("local rearrangement unreachable in {0}")]
    LocalUnreachable(String),
}

/// One synchronized step: simultaneous (from, to) cell moves.
pub type StepMoves = Vec<(Position, Position)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotionScript {
    pub steps: Vec<StepMoves>,
}

impl MotionScript {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push_step(&mut self, step: StepMoves) {
        self.steps.push(step);
    }

    pub fn append(&mut self, other: MotionScript) {
        self.steps.extend(other.steps);
    }

    /// Shift every coordinate by (dx, dy).
    pub fn translated(&self, dx: i32, dy: i32) -> MotionScript {
        MotionScript {
            steps: self
                .steps
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|(a, b)| {
                            (
                                Position::new(a.x + dx, a.y + dy),
                                Position::new(b.x + dx, b.y + dy),
                            )
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Mirror across the main diagonal (swap x and y).
    pub fn transposed(&self) -> MotionScript {
        MotionScript {
            steps: self
                .steps
                .iter()
                .map(|s| s.iter().map(|(a, b)| (a.transposed(), b.transposed())).collect())
                .collect(),
        }
    }
}

/// Merge scripts on pairwise disjoint cell regions into one script whose
/// step `i` is the union of the inputs' step `i` (shorter scripts idle).
pub fn merge_scripts(scripts: Vec<MotionScript>) -> MotionScript {
    let len = scripts.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut steps: Vec<StepMoves> = vec![Vec::new(); len];
    for script in scripts {
        for (i, step) in script.steps.into_iter().enumerate() {
            steps[i].extend(step);
        }
    }
    MotionScript { steps }
}

/// Replay a script over an occupancy, validating every step against the
/// grid collision model. Returns the final position of each robot.
pub fn validate_script(
    grid: &GridMap,
    occupancy: &[Position],
    script: &MotionScript,
) -> Result<Vec<Position>, MotionError> {
    let mut config = occupancy.to_vec();
    let mut at: HashMap<Position, usize> = HashMap::with_capacity(config.len());
    for (i, &p) in config.iter().enumerate() {
        at.insert(p, i);
    }
    for (step_idx, step) in script.steps.iter().enumerate() {
        let mut to = config.clone();
        for &(a, b) in step {
            let robot = *at
                .get(&a)
                .ok_or(MotionError::SourceEmpty { step: step_idx, at: a })?;
            to[robot] = b;
        }
        validate_step(grid, &config, &to)
            .map_err(|report| MotionError::InvalidStep { step: step_idx, report })?;
        let movers: Vec<(usize, Position)> =
            step.iter().map(|&(a, b)| (at[&a], b)).collect();
        for &(a, _) in step {
            at.remove(&a);
        }
        for &(robot, b) in &movers {
            at.insert(b, robot);
        }
        config = to;
    }
    Ok(config)
}

/// Apply a script to per-robot paths (appending one position per step),
/// without validation. Robots not moved in a step wait.
pub fn extend_paths(
    paths: &mut [Vec<Position>],
    script: &MotionScript,
) -> Result<(), MotionError> {
    let mut at: HashMap<Position, usize> = HashMap::with_capacity(paths.len());
    for (i, path) in paths.iter().enumerate() {
        at.insert(*path.last().unwrap(), i);
    }
    for (step_idx, step) in script.steps.iter().enumerate() {
        let mut moved: Vec<(usize, Position)> = Vec::with_capacity(step.len());
        for &(a, b) in step {
            let robot = *at
                .get(&a)
                .ok_or(MotionError::SourceEmpty { step: step_idx, at: a })?;
            moved.push((robot, b));
        }
        for &(a, _) in step {
            at.remove(&a);
        }
        for &(robot, b) in &moved {
            at.insert(b, robot);
        }
        let n = paths.len();
        for path in paths.iter_mut() {
            let last = *path.last().unwrap();
            path.push(last);
        }
        for &(robot, b) in &moved {
            debug_assert!(robot < n);
            *paths[robot].last_mut().unwrap() = b;
        }
    }
    Ok(())
}

/// Compact a whole plan: express it as a script of per-step moves, fold
/// steps greedily, and rebuild the plan.
pub fn compact_plan(grid: &GridMap, plan: &crate::grid::Plan) -> crate::grid::Plan {
    let starts = plan.config_at(0);
    let horizon = plan.horizon();
    let mut script = MotionScript::default();
    for t in 1..=horizon {
        let step: StepMoves = plan
            .paths
            .iter()
            .filter(|p| p[t - 1] != p[t])
            .map(|p| (p[t - 1], p[t]))
            .collect();
        script.push_step(step);
    }
    let compacted = compact_script(grid, &starts, &script);
    let mut paths: Vec<Vec<Position>> = starts.iter().map(|&s| vec![s]).collect();
    extend_paths(&mut paths, &compacted).expect("compacted script replays");
    crate::grid::Plan { paths }
}

/// Greedy step compaction: repeatedly fold a step into its predecessor when
/// the combined simultaneous transition stays valid (checked with the real
/// validator). Robots moved twice never merge. Deterministic.
pub fn compact_script(
    grid: &GridMap,
    occupancy: &[Position],
    script: &MotionScript,
) -> MotionScript {
    let mut out: Vec<StepMoves> = Vec::with_capacity(script.len());
    // config before the last out step, and after it
    let mut prev_config: Vec<Position> = occupancy.to_vec();
    let mut cur_config: Vec<Position> = occupancy.to_vec();
    let mut at: HashMap<Position, usize> = HashMap::with_capacity(occupancy.len());
    for (i, &p) in occupancy.iter().enumerate() {
        at.insert(p, i);
    }
    let mut last_moved: Vec<usize> = Vec::new();

    for step in &script.steps {
        if step.is_empty() {
            continue;
        }
        let movers: Vec<(usize, Position, Position)> = step
            .iter()
            .map(|&(a, b)| (*at.get(&a).expect("script move out of empty cell"), a, b))
            .collect();
        let mut mergeable = !out.is_empty();
        if mergeable {
            for &(r, _, _) in &movers {
                if last_moved.contains(&r) {
                    mergeable = false;
                    break;
                }
            }
        }
        if mergeable {
            let mut combined = cur_config.clone();
            for &(r, _, b) in &movers {
                combined[r] = b;
            }
            // validate against the configuration before the last out step
            if validate_step(grid, &prev_config, &combined).is_ok() {
                let last = out.last_mut().unwrap();
                for &(_, a, _) in &movers {
                    at.remove(&a);
                }
                for &(r, a, b) in &movers {
                    last.push((a, b));
                    at.insert(b, r);
                    cur_config[r] = b;
                    last_moved.push(r);
                }
                continue;
            }
        }
        // start a new step
        prev_config = cur_config.clone();
        last_moved.clear();
        let mut new_step: StepMoves = Vec::with_capacity(movers.len());
        for &(_, a, _) in &movers {
            at.remove(&a);
        }
        for &(r, a, b) in &movers {
            new_step.push((a, b));
            at.insert(b, r);
            cur_config[r] = b;
            last_moved.push(r);
        }
        out.push(new_step);
    }
    MotionScript { steps: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(x: i32, y: i32) -> Position {
        Position::new(x, y)
    }

    #[test]
    fn validate_script_accepts_rotation_and_rejects_swap() {
        let grid = GridMap::new(2, 2).unwrap();
        let occ = vec![pos(1, 1), pos(1, 2), pos(2, 2), pos(2, 1)];
        let rot = MotionScript {
            steps: vec![vec![
                (pos(1, 1), pos(1, 2)),
                (pos(1, 2), pos(2, 2)),
                (pos(2, 2), pos(2, 1)),
                (pos(2, 1), pos(1, 1)),
            ]],
        };
        let end = validate_script(&grid, &occ, &rot).unwrap();
        assert_eq!(end, vec![pos(1, 2), pos(2, 2), pos(2, 1), pos(1, 1)]);

        let swap = MotionScript {
            steps: vec![vec![(pos(1, 1), pos(1, 2)), (pos(1, 2), pos(1, 1))]],
        };
        assert!(matches!(
            validate_script(&grid, &occ, &swap),
            Err(MotionError::InvalidStep { .. })
        ));
    }

    #[test]
    fn merge_scripts_pads_shorter_inputs() {
        let a = MotionScript {
            steps: vec![vec![(pos(1, 1), pos(1, 2))], vec![(pos(1, 2), pos(1, 3))]],
        };
        let b = MotionScript { steps: vec![vec![(pos(3, 1), pos(3, 2))]] };
        let merged = merge_scripts(vec![a, b]);
        assert_eq!(merged.len(), 2);
        assert_eq!(merged.steps[0].len(), 2);
        assert_eq!(merged.steps[1].len(), 1);
    }

    #[test]
    fn compaction_merges_independent_steps() {
        let grid = GridMap::new(1, 5).unwrap();
        let occ = vec![pos(1, 1), pos(1, 4)];
        // two independent moves in sequence can run simultaneously
        let script = MotionScript {
            steps: vec![vec![(pos(1, 1), pos(1, 2))], vec![(pos(1, 4), pos(1, 5))]],
        };
        let compact = compact_script(&grid, &occ, &script);
        assert_eq!(compact.len(), 1);
        let end = validate_script(&grid, &occ, &compact).unwrap();
        assert_eq!(end, vec![pos(1, 2), pos(1, 5)]);
    }

    #[test]
    fn compaction_never_merges_dependent_steps() {
        let grid = GridMap::new(1, 3).unwrap();
        let occ = vec![pos(1, 1)];
        // same robot moves twice; must stay two steps
        let script = MotionScript {
            steps: vec![vec![(pos(1, 1), pos(1, 2))], vec![(pos(1, 2), pos(1, 3))]],
        };
        let compact = compact_script(&grid, &occ, &script);
        assert_eq!(compact.len(), 2);
    }

    #[test]
    fn compaction_respects_blocking_robots() {
        let grid = GridMap::new(1, 3).unwrap();
        let occ = vec![pos(1, 1), pos(1, 2)];
        // robot 1 steps away, then robot 0 takes its cell; merging them is a
        // legal following move, so compaction may fold it into one step.
        let script = MotionScript {
            steps: vec![vec![(pos(1, 2), pos(1, 3))], vec![(pos(1, 1), pos(1, 2))]],
        };
        let compact = compact_script(&grid, &occ, &script);
        assert_eq!(compact.len(), 1);
        let end = validate_script(&grid, &occ, &compact).unwrap();
        assert_eq!(end, vec![pos(1, 2), pos(1, 3)]);
    }

    #[test]
    fn extend_paths_tracks_movers_and_waiters() {
        let mut paths = vec![vec![pos(1, 1)], vec![pos(2, 2)]];
        let script = MotionScript {
            steps: vec![vec![(pos(1, 1), pos(1, 2))], vec![(pos(2, 2), pos(2, 1))]],
        };
        extend_paths(&mut paths, &script).unwrap();
        assert_eq!(paths[0], vec![pos(1, 1), pos(1, 2), pos(1, 2)]);
        assert_eq!(paths[1], vec![pos(2, 2), pos(2, 2), pos(2, 1)]);
    }
}
