//! Abstract Rubik Table machinery: color multigraph construction,
//! decomposition into perfect matchings, and three-round shuffle planning.
//!
//! An `m1 x m2` table holds items, at most `capacity` per cell. A *shuffle*
//! arbitrarily permutes the items of one row or one column. A colored table
//! sorts in two rounds (rows then columns for row-target orientation); a
//! labeled table needs a third round. Round counts are `2*m1 + m2` shuffles
//! for row/column/row order and `m1 + 2*m2` for column/row/column.
//!
//! Table cells and colors are 0-based throughout this module.

use crate::bipartite::max_bipartite_matching;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Row,
    Col,
}

impl Axis {
    pub fn flipped(self) -> Axis {
        match self {
            Axis::Row => Axis::Col,
            Axis::Col => Axis::Row,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// Colors index target rows; sorted means row `i` holds only color `i`.
    RowTarget,
    /// Colors index target columns.
    ColumnTarget,
}

/// Shuffle round order for labeled tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundOrder {
    /// row / column / row: `2*m1 + m2` shuffles.
    Rcr,
    /// column / row / column: `m1 + 2*m2` shuffles (the "LL" variant).
    Crc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableItem {
    /// Current cell (row, col).
    pub cell: (usize, usize),
    /// Target line index under the active orientation.
    pub color: usize,
    /// Exact goal cell for labeled problems.
    pub goal: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractTable {
    pub rows: usize,
    pub cols: usize,
    pub capacity: usize,
    pub items: Vec<TableItem>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RubikError {
    #[error("item {0} out of table bounds")]
    ItemOutOfBounds(usize),
    #[error("cell ({0}, {1}) holds more than capacity items")]
    OverCapacity(usize, usize),
    #[error("table is not full: planning requires capacity items in every cell")]
    NotFull,
    #[error("color counts are not consistent with a regular multigraph")]
    NonRegular,
    #[error("matching extraction failed: multigraph is not regular (caller bug)")]
    ExtractionFailed,
    #[error("item {0} lacks a goal label")]
    MissingLabel(usize),
    #[error("goal cell ({0}, {1}) is targeted by more than capacity items")]
    GoalOverCapacity(usize, usize),
    #[error("round {round}: item {item} target leaves its {axis:?} line")]
    LineMismatch { round: usize, item: usize, axis: Axis },
    #[error("plan does not fit table dimensions")]
    DimensionMismatch,
    #[error("table parse error at line {0}: {1}")]
    Parse(usize, String),
}

impl AbstractTable {
    pub fn new(rows: usize, cols: usize, capacity: usize, items: Vec<TableItem>) -> Result<Self, RubikError> {
        let table = AbstractTable { rows, cols, capacity, items };
        table.check_occupancy()?;
        Ok(table)
    }

    fn check_occupancy(&self) -> Result<(), RubikError> {
        let mut load = vec![0usize; self.rows * self.cols];
        for (i, item) in self.items.iter().enumerate() {
            let (r, c) = item.cell;
            if r >= self.rows || c >= self.cols {
                return Err(RubikError::ItemOutOfBounds(i));
            }
            load[r * self.cols + c] += 1;
            if load[r * self.cols + c] > self.capacity {
                return Err(RubikError::OverCapacity(r, c));
            }
        }
        Ok(())
    }

    pub fn is_full(&self) -> bool {
        self.items.len() == self.rows * self.cols * self.capacity
    }

    pub fn transposed(&self) -> AbstractTable {
        AbstractTable {
            rows: self.cols,
            cols: self.rows,
            capacity: self.capacity,
            items: self
                .items
                .iter()
                .map(|it| TableItem {
                    cell: (it.cell.1, it.cell.0),
                    color: it.color,
                    goal: it.goal.map(|(r, c)| (c, r)),
                })
                .collect(),
        }
    }

    /// True when every item sits on its color line.
    pub fn is_color_sorted(&self, orientation: Orientation) -> bool {
        self.items.iter().all(|it| match orientation {
            Orientation::RowTarget => it.cell.0 == it.color,
            Orientation::ColumnTarget => it.cell.1 == it.color,
        })
    }

    /// True when every item sits exactly on its goal cell.
    pub fn is_label_sorted(&self) -> bool {
        self.items.iter().all(|it| it.goal == Some(it.cell))
    }
}

/// Bipartite multigraph between colors and current lines; one edge per item.
#[derive(Clone, Debug)]
pub struct ColorMultigraph {
    pub colors: usize,
    pub lines: usize,
    /// (color, line, item id), sorted.
    pub edges: Vec<(usize, usize, usize)>,
}

impl ColorMultigraph {
    pub fn degree(&self) -> usize {
        if self.colors == 0 {
            0
        } else {
            self.edges.len() / self.colors
        }
    }
}

/// Ordered list of perfect matchings; their disjoint union is the
/// multigraph edge multiset.
#[derive(Clone, Debug)]
pub struct MatchingSet {
    /// Each matching: (color, line, item id) triples, sorted by color.
    pub matchings: Vec<Vec<(usize, usize, usize)>>,
}

/// One shuffle round: an axis tag plus per-item intermediate target cells.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShuffleRound {
    pub axis: Axis,
    /// Indexed by item id.
    pub targets: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct ShufflePlan {
    pub rounds: Vec<ShuffleRound>,
}

impl ShufflePlan {
    /// Number of line shuffles the plan performs on an `m1 x m2` table:
    /// a row round is `m1` parallel row shuffles, a column round `m2`.
    pub fn shuffle_count(&self, rows: usize, cols: usize) -> usize {
        self.rounds
            .iter()
            .map(|r| match r.axis {
                Axis::Row => rows,
                Axis::Col => cols,
            })
            .sum()
    }

    fn transposed(&self) -> ShufflePlan {
        ShufflePlan {
            rounds: self
                .rounds
                .iter()
                .map(|round| ShuffleRound {
                    axis: round.axis.flipped(),
                    targets: round.targets.iter().map(|&(r, c)| (c, r)).collect(),
                })
                .collect(),
        }
    }
}

/// Build the color multigraph for a table under the given orientation:
/// one edge per item, connecting its color to its current line.
pub fn build_color_graph(
    table: &AbstractTable,
    orientation: Orientation,
) -> Result<ColorMultigraph, RubikError> {
    let (colors, lines, per_line) = match orientation {
        Orientation::RowTarget => (table.rows, table.rows, table.cols * table.capacity),
        Orientation::ColumnTarget => (table.cols, table.cols, table.rows * table.capacity),
    };
    let mut color_deg = vec![0usize; colors];
    let mut line_deg = vec![0usize; lines];
    let mut edges = Vec::with_capacity(table.items.len());
    for (i, item) in table.items.iter().enumerate() {
        let line = match orientation {
            Orientation::RowTarget => item.cell.0,
            Orientation::ColumnTarget => item.cell.1,
        };
        if item.color >= colors {
            return Err(RubikError::NonRegular);
        }
        color_deg[item.color] += 1;
        line_deg[line] += 1;
        edges.push((item.color, line, i));
    }
    if color_deg.iter().any(|&d| d != per_line) || line_deg.iter().any(|&d| d != per_line) {
        return Err(RubikError::NonRegular);
    }
    edges.sort_unstable();
    Ok(ColorMultigraph { colors, lines, edges })
}

/// Decompose a k-regular bipartite multigraph into k perfect matchings by
/// repeated augmenting-path maximum matching with deterministic tie-breaks
/// (lowest color, line, then item id).
pub fn decompose_matchings(graph: &ColorMultigraph) -> Result<MatchingSet, RubikError> {
    let n = graph.colors;
    if n == 0 {
        return Ok(MatchingSet { matchings: vec![] });
    }
    if graph.lines != n || graph.edges.len() % n != 0 {
        return Err(RubikError::NonRegular);
    }
    let k = graph.edges.len() / n;
    // remaining[color][line] = queue of item ids (ascending)
    let mut remaining: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for &(t, r, item) in &graph.edges {
        remaining[t][r].push(item);
    }
    let mut matchings = Vec::with_capacity(k);
    for _ in 0..k {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|t| (0..n).filter(|&r| !remaining[t][r].is_empty()).collect())
            .collect();
        let (match_l, size) = max_bipartite_matching(n, n, &adj);
        if size != n {
            return Err(RubikError::ExtractionFailed);
        }
        let mut matching = Vec::with_capacity(n);
        for (t, r) in match_l.into_iter().enumerate() {
            let r = r.unwrap();
            let item = remaining[t][r].remove(0);
            matching.push((t, r, item));
        }
        matchings.push(matching);
    }
    Ok(MatchingSet { matchings })
}

fn check_full_for_planning(table: &AbstractTable) -> Result<(), RubikError> {
    if !table.is_full() {
        return Err(RubikError::NotFull);
    }
    Ok(())
}

/// Two-round plan sorting a colored table (row-target: rows first, then
/// columns). Matching blocks of `capacity` consecutive matchings share one
/// physical table column.
pub fn plan_colored(
    table: &AbstractTable,
    orientation: Orientation,
) -> Result<ShufflePlan, RubikError> {
    match orientation {
        Orientation::RowTarget => plan_colored_row_target(table),
        Orientation::ColumnTarget => {
            let plan = plan_colored_row_target(&table.transposed())?;
            Ok(plan.transposed())
        }
    }
}

fn plan_colored_row_target(table: &AbstractTable) -> Result<ShufflePlan, RubikError> {
    check_full_for_planning(table)?;
    let graph = build_color_graph(table, Orientation::RowTarget)?;
    let matchings = decompose_matchings(&graph)?;
    rounds_from_matchings(table, &matchings).map(|rounds| ShufflePlan { rounds })
}

fn rounds_from_matchings(
    table: &AbstractTable,
    matchings: &MatchingSet,
) -> Result<Vec<ShuffleRound>, RubikError> {
    let n_items = table.items.len();
    debug_assert_eq!(matchings.matchings.len(), table.cols * table.capacity);
    let mut round1 = vec![(usize::MAX, usize::MAX); n_items];
    let mut round2 = vec![(usize::MAX, usize::MAX); n_items];
    for (idx, matching) in matchings.matchings.iter().enumerate() {
        let col = idx / table.capacity;
        for &(color, line, item) in matching {
            round1[item] = (line, col);
            round2[item] = (color, col);
        }
    }
    if round1.iter().any(|&t| t.0 == usize::MAX) {
        return Err(RubikError::ExtractionFailed);
    }
    Ok(vec![
        ShuffleRound { axis: Axis::Row, targets: round1 },
        ShuffleRound { axis: Axis::Col, targets: round2 },
    ])
}

/// Three-round plan placing every labeled item at its goal cell.
/// `Rcr` uses colors = goal rows; `Crc` is its transpose.
pub fn plan_labeled(table: &AbstractTable, order: RoundOrder) -> Result<ShufflePlan, RubikError> {
    match order {
        RoundOrder::Rcr => plan_labeled_rcr(table),
        RoundOrder::Crc => {
            let plan = plan_labeled_rcr(&table.transposed())?;
            Ok(plan.transposed())
        }
    }
}

fn plan_labeled_rcr(table: &AbstractTable) -> Result<ShufflePlan, RubikError> {
    check_full_for_planning(table)?;
    // Derive colors = goal rows; goals must tile the table exactly.
    let mut goal_load = vec![0usize; table.rows * table.cols];
    let mut colored = table.clone();
    for (i, item) in colored.items.iter_mut().enumerate() {
        let (gr, gc) = item.goal.ok_or(RubikError::MissingLabel(i))?;
        if gr >= table.rows || gc >= table.cols {
            return Err(RubikError::ItemOutOfBounds(i));
        }
        goal_load[gr * table.cols + gc] += 1;
        if goal_load[gr * table.cols + gc] > table.capacity {
            return Err(RubikError::GoalOverCapacity(gr, gc));
        }
        item.color = gr;
    }
    let graph = build_color_graph(&colored, Orientation::RowTarget)?;
    let matchings = decompose_matchings(&graph)?;
    let mut rounds = rounds_from_matchings(&colored, &matchings)?;
    // Third round: within each goal row, move to exact goal cells.
    let round3 = ShuffleRound {
        axis: Axis::Row,
        targets: colored.items.iter().map(|it| it.goal.unwrap()).collect(),
    };
    rounds.push(round3);
    Ok(ShufflePlan { rounds })
}

/// Replay a plan on a table: the test oracle for shuffle plans. Each round
/// must keep every item on its current line of the round axis and respect
/// cell capacities.
pub fn apply_shuffle_plan(
    table: &AbstractTable,
    plan: &ShufflePlan,
) -> Result<AbstractTable, RubikError> {
    let mut out = table.clone();
    for (round_idx, round) in plan.rounds.iter().enumerate() {
        if round.targets.len() != out.items.len() {
            return Err(RubikError::DimensionMismatch);
        }
        for (i, (&target, item)) in round.targets.iter().zip(out.items.iter()).enumerate() {
            let same_line = match round.axis {
                Axis::Row => target.0 == item.cell.0,
                Axis::Col => target.1 == item.cell.1,
            };
            if !same_line {
                return Err(RubikError::LineMismatch { round: round_idx, item: i, axis: round.axis });
            }
            if target.0 >= out.rows || target.1 >= out.cols {
                return Err(RubikError::ItemOutOfBounds(i));
            }
        }
        for (item, &target) in out.items.iter_mut().zip(round.targets.iter()) {
            item.cell = target;
        }
        out.check_occupancy()?;
    }
    Ok(out)
}

/// Table text format: `m1 m2 capacity` header, then one line per item
/// `r c color label` where label is the goal cell encoded as
/// `r * cols + c`, or -1 when absent.
pub fn write_table(table: &AbstractTable) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", table.rows, table.cols, table.capacity).unwrap();
    for item in &table.items {
        let label = item
            .goal
            .map_or(-1i64, |(r, c)| (r * table.cols + c) as i64);
        writeln!(out, "{} {} {} {}", item.cell.0, item.cell.1, item.color, label).unwrap();
    }
    out
}

pub fn read_table(text: &str) -> Result<AbstractTable, RubikError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| RubikError::Parse(1, "empty input".into()))?;
    let head: Vec<usize> = header
        .split(' ')
        .map(|t| t.parse().map_err(|e| RubikError::Parse(1, format!("{e}"))))
        .collect::<Result<_, _>>()?;
    if head.len() != 3 {
        return Err(RubikError::Parse(1, "expected `m1 m2 capacity`".into()));
    }
    let (rows, cols, capacity) = (head[0], head[1], head[2]);
    let mut items = Vec::new();
    for (idx, line) in lines {
        let vals: Vec<i64> = line
            .split(' ')
            .map(|t| t.parse().map_err(|e| RubikError::Parse(idx + 1, format!("{e}"))))
            .collect::<Result<_, _>>()?;
        if vals.len() != 4 {
            return Err(RubikError::Parse(idx + 1, "expected `r c color label`".into()));
        }
        let goal = if vals[3] < 0 {
            None
        } else {
            let g = vals[3] as usize;
            Some((g / cols, g % cols))
        };
        items.push(TableItem {
            cell: (vals[0] as usize, vals[1] as usize),
            color: vals[2] as usize,
            goal,
        });
    }
    AbstractTable::new(rows, cols, capacity, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Full capacity-1 labeled table: goals form a random bijection.
    pub(crate) fn random_labeled_table(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> AbstractTable {
        let cells: Vec<(usize, usize)> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .collect();
        let mut goals = cells.clone();
        goals.shuffle(rng);
        let items = cells
            .iter()
            .zip(goals.iter())
            .map(|(&cell, &goal)| TableItem { cell, color: goal.0, goal: Some(goal) })
            .collect();
        AbstractTable::new(rows, cols, 1, items).unwrap()
    }

    fn fig2_like_table() -> AbstractTable {
        // 4x3 capacity-1 labeled table with a fixed scrambled goal bijection.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        random_labeled_table(4, 3, &mut rng)
    }

    #[test]
    fn color_graph_on_4x3_is_3_regular_with_12_edges() {
        let table = fig2_like_table();
        let mut colored = table.clone();
        for item in &mut colored.items {
            item.color = item.goal.unwrap().0;
        }
        let g = build_color_graph(&colored, Orientation::RowTarget).unwrap();
        assert_eq!(g.colors, 4);
        assert_eq!(g.lines, 4);
        assert_eq!(g.edges.len(), 12);
        assert_eq!(g.degree(), 3);
    }

    #[test]
    fn sorted_table_connects_each_color_to_its_own_line() {
        let rows = 3;
        let cols = 4;
        let items: Vec<TableItem> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| TableItem { cell: (r, c), color: r, goal: None }))
            .collect();
        let table = AbstractTable::new(rows, cols, 1, items).unwrap();
        let g = build_color_graph(&table, Orientation::RowTarget).unwrap();
        assert!(g.edges.iter().all(|&(t, r, _)| t == r));
        for t in 0..rows {
            assert_eq!(g.edges.iter().filter(|&&(c, _, _)| c == t).count(), cols);
        }
    }

    #[test]
    fn random_6x6_graph_has_uniform_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let table = random_labeled_table(6, 6, &mut rng);
        let mut colored = table.clone();
        for item in &mut colored.items {
            item.color = item.goal.unwrap().0;
        }
        let g = build_color_graph(&colored, Orientation::RowTarget).unwrap();
        for v in 0..6 {
            assert_eq!(g.edges.iter().filter(|&&(t, _, _)| t == v).count(), 6);
            assert_eq!(g.edges.iter().filter(|&&(_, r, _)| r == v).count(), 6);
        }
    }

    #[test]
    fn non_regular_color_counts_rejected() {
        // Two items of color 0, none of color 1, on a 2x1 table.
        let items = vec![
            TableItem { cell: (0, 0), color: 0, goal: None },
            TableItem { cell: (1, 0), color: 0, goal: None },
        ];
        let table = AbstractTable::new(2, 1, 1, items).unwrap();
        assert_eq!(
            build_color_graph(&table, Orientation::RowTarget).unwrap_err(),
            RubikError::NonRegular
        );
    }

    #[test]
    fn one_regular_graph_decomposes_into_itself() {
        let g = ColorMultigraph {
            colors: 3,
            lines: 3,
            edges: vec![(0, 1, 0), (1, 2, 1), (2, 0, 2)],
        };
        let ms = decompose_matchings(&g).unwrap();
        assert_eq!(ms.matchings.len(), 1);
        let mut edges = ms.matchings[0].clone();
        edges.sort_unstable();
        assert_eq!(edges, g.edges);
    }

    #[test]
    fn random_4_regular_multigraph_decomposes_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // Union of 4 random permutations on 7+7 vertices = 4-regular multigraph.
        let n = 7;
        let mut edges = Vec::new();
        let mut item = 0;
        for _ in 0..4 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            for (t, &r) in perm.iter().enumerate() {
                edges.push((t, r, item));
                item += 1;
            }
        }
        edges.sort_unstable();
        let g = ColorMultigraph { colors: n, lines: n, edges: edges.clone() };
        let ms = decompose_matchings(&g).unwrap();
        assert_eq!(ms.matchings.len(), 4);
        let mut union: Vec<(usize, usize, usize)> = Vec::new();
        for m in &ms.matchings {
            // each matching is perfect
            let mut colors: Vec<usize> = m.iter().map(|e| e.0).collect();
            let mut lines: Vec<usize> = m.iter().map(|e| e.1).collect();
            colors.sort_unstable();
            lines.sort_unstable();
            assert_eq!(colors, (0..n).collect::<Vec<_>>());
            assert_eq!(lines, (0..n).collect::<Vec<_>>());
            union.extend_from_slice(m);
        }
        union.sort_unstable();
        assert_eq!(union, edges, "disjoint union of matchings equals the input multiset");
    }

    #[test]
    fn colored_plan_sorts_and_first_round_spreads_colors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let table = {
            // random 5x4 colored table: colors = a random row-balanced assignment
            let t = random_labeled_table(5, 4, &mut rng);
            let mut t2 = t.clone();
            for item in &mut t2.items {
                item.color = item.goal.unwrap().0;
                item.goal = None;
            }
            t2
        };
        let plan = plan_colored(&table, Orientation::RowTarget).unwrap();
        assert_eq!(plan.rounds.len(), 2);
        assert_eq!(plan.rounds[0].axis, Axis::Row);
        assert_eq!(plan.rounds[1].axis, Axis::Col);

        // After round 1, every column holds each color exactly once.
        let mid = apply_shuffle_plan(
            &table,
            &ShufflePlan { rounds: vec![plan.rounds[0].clone()] },
        )
        .unwrap();
        for c in 0..mid.cols {
            let mut colors: Vec<usize> = mid
                .items
                .iter()
                .filter(|it| it.cell.1 == c)
                .map(|it| it.color)
                .collect();
            colors.sort_unstable();
            assert_eq!(colors, (0..mid.rows).collect::<Vec<_>>());
        }

        let done = apply_shuffle_plan(&table, &plan).unwrap();
        assert!(done.is_color_sorted(Orientation::RowTarget));
    }

    #[test]
    fn sorted_colored_table_gets_identity_rounds() {
        let rows = 3;
        let cols = 3;
        let items: Vec<TableItem> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| TableItem { cell: (r, c), color: r, goal: None }))
            .collect();
        let table = AbstractTable::new(rows, cols, 1, items).unwrap();
        let plan = plan_colored(&table, Orientation::RowTarget).unwrap();
        let after = apply_shuffle_plan(&table, &plan).unwrap();
        assert!(after.is_color_sorted(Orientation::RowTarget));
        // Round 2 must be the identity on a table already color-sorted per row:
        // every item stays in its row in round 1, and round 2 sends it back to
        // its color row, which it never left.
        for (item, &t) in table.items.iter().zip(plan.rounds[1].targets.iter()) {
            assert_eq!(t.0, item.color);
        }
    }

    #[test]
    fn labeled_plan_on_4x3_uses_11_shuffles() {
        let table = fig2_like_table();
        let plan = plan_labeled(&table, RoundOrder::Rcr).unwrap();
        assert_eq!(plan.rounds.len(), 3);
        assert_eq!(plan.shuffle_count(table.rows, table.cols), 2 * 4 + 3);
        let done = apply_shuffle_plan(&table, &plan).unwrap();
        assert!(done.is_label_sorted());
    }

    #[test]
    fn identity_labeled_table_plans_identity_rounds() {
        let rows = 4;
        let cols = 4;
        let items: Vec<TableItem> = (0..rows)
            .flat_map(|r| {
                (0..cols).map(move |c| TableItem { cell: (r, c), color: 0, goal: Some((r, c)) })
            })
            .collect();
        let table = AbstractTable::new(rows, cols, 1, items).unwrap();
        let plan = plan_labeled(&table, RoundOrder::Rcr).unwrap();
        for round in &plan.rounds {
            for (item, &t) in table.items.iter().zip(round.targets.iter()) {
                assert_eq!(t, item.cell, "identity table should never move");
            }
        }
    }

    #[test]
    fn both_orders_sort_with_theorem_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let table = random_labeled_table(6, 4, &mut rng);
        let rcr = plan_labeled(&table, RoundOrder::Rcr).unwrap();
        let crc = plan_labeled(&table, RoundOrder::Crc).unwrap();
        assert_eq!(rcr.shuffle_count(6, 4), 16);
        assert_eq!(crc.shuffle_count(6, 4), 14);
        assert!(apply_shuffle_plan(&table, &rcr).unwrap().is_label_sorted());
        assert!(apply_shuffle_plan(&table, &crc).unwrap().is_label_sorted());
        let axes: Vec<Axis> = rcr.rounds.iter().map(|r| r.axis).collect();
        assert_eq!(axes, vec![Axis::Row, Axis::Col, Axis::Row]);
        let axes: Vec<Axis> = crc.rounds.iter().map(|r| r.axis).collect();
        assert_eq!(axes, vec![Axis::Col, Axis::Row, Axis::Col]);
    }

    #[test]
    fn empty_plan_is_identity_and_inverse_composition_restores() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let table = random_labeled_table(4, 4, &mut rng);
        let same = apply_shuffle_plan(&table, &ShufflePlan::default()).unwrap();
        assert_eq!(same, table);

        // plan then per-round inverse plan, applied in reverse order
        let plan = plan_labeled(&table, RoundOrder::Rcr).unwrap();
        let sorted = apply_shuffle_plan(&table, &plan).unwrap();
        let mut configs = vec![table.clone()];
        for round in &plan.rounds {
            let prev = configs.last().unwrap();
            let next = apply_shuffle_plan(
                prev,
                &ShufflePlan { rounds: vec![round.clone()] },
            )
            .unwrap();
            configs.push(next);
        }
        let mut inverse_rounds = Vec::new();
        for (i, round) in plan.rounds.iter().enumerate().rev() {
            let before = &configs[i];
            inverse_rounds.push(ShuffleRound {
                axis: round.axis,
                targets: before.items.iter().map(|it| it.cell).collect(),
            });
        }
        let restored =
            apply_shuffle_plan(&sorted, &ShufflePlan { rounds: inverse_rounds }).unwrap();
        assert_eq!(restored, table);
    }

    #[test]
    fn line_mismatch_rejected() {
        let table = AbstractTable::new(
            2,
            2,
            1,
            vec![
                TableItem { cell: (0, 0), color: 0, goal: None },
                TableItem { cell: (0, 1), color: 0, goal: None },
                TableItem { cell: (1, 0), color: 1, goal: None },
                TableItem { cell: (1, 1), color: 1, goal: None },
            ],
        )
        .unwrap();
        let bad = ShufflePlan {
            rounds: vec![ShuffleRound {
                axis: Axis::Row,
                targets: vec![(1, 0), (0, 1), (0, 0), (1, 1)],
            }],
        };
        assert!(matches!(
            apply_shuffle_plan(&table, &bad),
            Err(RubikError::LineMismatch { .. })
        ));
    }

    #[test]
    fn table_text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let table = random_labeled_table(3, 5, &mut rng);
        let text = write_table(&table);
        let back = read_table(&text).unwrap();
        assert_eq!(back, table);
        assert_eq!(write_table(&back), text);
    }

    #[test]
    fn shuffle_plan_serializes_to_json() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let table = random_labeled_table(3, 3, &mut rng);
        let plan = plan_labeled(&table, RoundOrder::Rcr).unwrap();
        let json = serde_json::to_string(&plan).unwrap();
        let back: ShufflePlan = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rounds.len(), plan.rounds.len());
    }
}
