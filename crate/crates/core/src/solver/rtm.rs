//! RTM: full-density solving. Virtual robots fill every empty cell, a
//! labeled three-round shuffle plan is computed on the grid-as-table, and
//! each round runs as parallel odd-even line shuffles with swap gadgets.

use super::{BundleParts, PhaseBreakdown, SolutionBundle, SolveBudget, SolveError};
use crate::grid::{Instance, Plan, Position};
use crate::motion::gadget::embedded_tables;
use crate::motion::odd_even::{odd_even_line_shuffle, partition_gadget_groups};
use crate::motion::{compact_plan, extend_paths, MotionScript};
use crate::rubik::{plan_labeled, AbstractTable, Axis, RoundOrder, TableItem};
use std::time::Instant;

pub(crate) fn solve_rtm_rcr(
    instance: &Instance,
    budget: SolveBudget,
    started: Instant,
) -> Result<SolutionBundle, SolveError> {
    let grid = &instance.grid;
    let (rows, cols) = (grid.rows() as usize, grid.cols() as usize);
    if grid.obstacle_count() > 0 {
        return Err(SolveError::ObstaclesUnsupported("rtm"));
    }
    // both axes host gadget groups at some point (rows for row rounds,
    // columns for column rounds)
    partition_gadget_groups(rows).map_err(|e| SolveError::UnsupportedDimension(e.to_string()))?;
    partition_gadget_groups(cols).map_err(|e| SolveError::UnsupportedDimension(e.to_string()))?;
    let n = instance.robots();
    let cells = rows * cols;
    if n > cells {
        return Err(SolveError::DensityExceeded { robots: n, capacity: cells });
    }

    // pad to full density: leftover start cells pair with leftover goal
    // cells in row-major order
    let all_cells: Vec<Position> = (1..=grid.rows())
        .flat_map(|x| (1..=grid.cols()).map(move |y| Position::new(x, y)))
        .collect();
    let mut start_used: std::collections::HashSet<Position> =
        instance.starts.iter().copied().collect();
    let mut goal_used: std::collections::HashSet<Position> =
        instance.goals.iter().copied().collect();
    let mut starts = instance.starts.clone();
    let mut goals = instance.goals.clone();
    for &c in &all_cells {
        if start_used.insert(c) {
            starts.push(c);
        }
        if goal_used.insert(c) {
            goals.push(c);
        }
    }
    debug_assert_eq!(starts.len(), cells);

    let items: Vec<TableItem> = starts
        .iter()
        .zip(goals.iter())
        .map(|(s, g)| TableItem {
            cell: ((s.x - 1) as usize, (s.y - 1) as usize),
            color: (g.x - 1) as usize,
            goal: Some(((g.x - 1) as usize, (g.y - 1) as usize)),
        })
        .collect();
    let table = AbstractTable::new(rows, cols, 1, items)?;
    let shuffle_plan = plan_labeled(&table, RoundOrder::Rcr)?;
    budget.check()?;

    // realize each round with odd-even sorting; item_at[r][c] tracks the
    // evolving arrangement
    let tables = embedded_tables();
    let mut item_at = vec![vec![usize::MAX; cols]; rows];
    for (i, item) in table.items.iter().enumerate() {
        item_at[item.cell.0][item.cell.1] = i;
    }
    let mut paths: Vec<Vec<Position>> = starts.iter().map(|&s| vec![s]).collect();
    let mut round_lens = [0usize; 3];
    for (round_idx, round) in shuffle_plan.rounds.iter().enumerate() {
        let script: MotionScript = match round.axis {
            Axis::Row => {
                let targets: Vec<Vec<usize>> = (0..rows)
                    .map(|r| (0..cols).map(|c| round.targets[item_at[r][c]].1).collect())
                    .collect();
                odd_even_line_shuffle(rows, cols, Axis::Row, &targets, tables)?
            }
            Axis::Col => {
                let targets: Vec<Vec<usize>> = (0..cols)
                    .map(|c| (0..rows).map(|r| round.targets[item_at[r][c]].0).collect())
                    .collect();
                odd_even_line_shuffle(cols, rows, Axis::Col, &targets, tables)?
            }
        };
        round_lens[round_idx] = script.len();
        extend_paths(&mut paths, &script)?;
        let mut next = vec![vec![usize::MAX; cols]; rows];
        for (i, &(r, c)) in round.targets.iter().enumerate() {
            next[r][c] = i;
        }
        item_at = next;
        budget.check()?;
    }

    // drop virtual robots, compact what remains
    paths.truncate(n);
    let plan = compact_plan(grid, &Plan { paths });
    debug_assert!(
        crate::grid::makespan(&plan) <= 7 * rows + 14 * cols,
        "rtm exceeded its makespan bound"
    );
    super::finish_bundle(
        instance,
        BundleParts {
            plan,
            phases: PhaseBreakdown {
                anon_in: 0,
                round1: round_lens[0],
                round2: round_lens[1],
                round3: round_lens[2],
                anon_out: 0,
            },
            matching_bottlenecks: vec![],
            lba_fallback: false,
            ip_model_lp: None,
        },
        started,
    )
}
