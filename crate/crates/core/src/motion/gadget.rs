//! Optimal swap-gadget scripts on fully occupied 3x2 and 4x2 grids.
//!
//! A gadget step simultaneously rotates any set of vertex-disjoint cycles
//! (in either direction); on a fully occupied 2-column grid those are
//! exactly the legal transitions. For every subset of horizontal row pairs
//! to swap, breadth-first search over item permutations yields a
//! makespan-optimal script: at most 7 steps on 3x2, at most 6 on 4x2.
//!
//! The tables are persisted to a versioned text file embedded in the crate;
//! regeneration reproduces it byte-exactly.

use super::{MotionError, MotionScript, StepMoves};
use crate::grid::Position;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

pub const GADGET_TABLE_DATA: &str = include_str!("../../data/gadget_tables.txt");

#[derive(Clone, Debug)]
pub struct GadgetTables {
    /// Scripts for 3x2, indexed by swap mask over the 3 rows (8 entries).
    pub three_by_two: Vec<MotionScript>,
    /// Scripts for 4x2, indexed by swap mask over the 4 rows (16 entries).
    pub four_by_two: Vec<MotionScript>,
}

impl GadgetTables {
    pub fn scripts(&self, height: usize) -> &[MotionScript] {
        match height {
            3 => &self.three_by_two,
            4 => &self.four_by_two,
            _ => panic!("no gadget table for height {height}"),
        }
    }
}

/// Cyclic rotation moves on an `h x 2` grid: all row intervals, both
/// directions, plus simultaneous combinations of disjoint intervals.
fn rotation_moves(h: usize) -> Vec<StepMoves> {
    // perimeter cycle of rows i..=j over both columns
    let cycle = |i: usize, j: usize| -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for r in i..=j {
            cells.push((r, 1));
        }
        for r in (i..=j).rev() {
            cells.push((r, 0));
        }
        cells
    };
    let mut intervals = Vec::new();
    for i in 0..h {
        for j in (i + 1)..h {
            intervals.push((i, j));
        }
    }
    // sets of pairwise disjoint intervals (non-empty)
    let mut combos: Vec<Vec<(usize, usize)>> = Vec::new();
    let total = 1usize << intervals.len();
    'outer: for mask in 1..total {
        let chosen: Vec<(usize, usize)> = intervals
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &iv)| iv)
            .collect();
        for a in 0..chosen.len() {
            for b in (a + 1)..chosen.len() {
                let (i1, j1) = chosen[a];
                let (i2, j2) = chosen[b];
                if i1 <= j2 && i2 <= j1 {
                    continue 'outer;
                }
            }
        }
        combos.push(chosen);
    }
    let mut moves = Vec::new();
    let dir_count = |k: usize| 1usize << k;
    for combo in combos {
        for dirmask in 0..dir_count(combo.len()) {
            let mut step: StepMoves = Vec::new();
            for (k, &(i, j)) in combo.iter().enumerate() {
                let cyc = cycle(i, j);
                let m = cyc.len();
                let forward = dirmask >> k & 1 == 0;
                for idx in 0..m {
                    let (fr, fc) = cyc[idx];
                    let (tr, tc) = if forward { cyc[(idx + 1) % m] } else { cyc[(idx + m - 1) % m] };
                    step.push((
                        Position::new(fr as i32 + 1, fc as i32 + 1),
                        Position::new(tr as i32 + 1, tc as i32 + 1),
                    ));
                }
            }
            step.sort();
            moves.push(step);
        }
    }
    moves.sort();
    moves
}

/// BFS over item permutations of the fully occupied `h x 2` grid, from the
/// identity, recording optimal scripts for every horizontal swap mask.
fn bfs_tables(h: usize) -> Vec<MotionScript> {
    let cells = 2 * h;
    let cell_index = |p: Position| ((p.x - 1) as usize) * 2 + (p.y - 1) as usize;
    let moves = rotation_moves(h);
    // move as permutation: perm[to] = from
    let move_perms: Vec<Vec<usize>> = moves
        .iter()
        .map(|step| {
            let mut perm: Vec<usize> = (0..cells).collect();
            for &(a, b) in step {
                perm[cell_index(b)] = cell_index(a);
            }
            perm
        })
        .collect();

    let start: Vec<u8> = (0..cells as u8).collect();
    let mut parents: HashMap<Vec<u8>, Option<(Vec<u8>, usize)>> = HashMap::new();
    parents.insert(start.clone(), None);
    let mut frontier = vec![start];

    // target states: swap mask m exchanges items of (r,0) and (r,1) per set bit
    let mut targets: HashMap<Vec<u8>, usize> = HashMap::new();
    for mask in 0..(1usize << h) {
        let mut state: Vec<u8> = (0..cells as u8).collect();
        for r in 0..h {
            if mask >> r & 1 == 1 {
                state.swap(2 * r, 2 * r + 1);
            }
        }
        targets.insert(state, mask);
    }
    let mut found: Vec<Option<Vec<u8>>> = vec![None; 1 << h];
    let mut found_count = 0;
    if let Some(&mask) = targets.get(parents.keys().next().unwrap()) {
        found[mask] = Some((0..cells as u8).collect());
        found_count += 1;
    }

    while found_count < (1 << h) {
        assert!(!frontier.is_empty(), "swap targets unreachable on {h}x2 (impossible)");
        let mut next = Vec::new();
        for state in frontier {
            for (mv, perm) in move_perms.iter().enumerate() {
                let new_state: Vec<u8> = (0..cells).map(|c| state[perm[c]]).collect();
                if parents.contains_key(&new_state) {
                    continue;
                }
                parents.insert(new_state.clone(), Some((state.clone(), mv)));
                if let Some(&mask) = targets.get(&new_state) {
                    if found[mask].is_none() {
                        found[mask] = Some(new_state.clone());
                        found_count += 1;
                    }
                }
                next.push(new_state);
            }
        }
        frontier = next;
    }

    (0..(1usize << h))
        .map(|mask| {
            let mut steps: Vec<StepMoves> = Vec::new();
            let mut cursor = found[mask].clone().unwrap();
            while let Some((prev, mv)) = parents.get(&cursor).unwrap().clone() {
                steps.push(moves[mv].clone());
                cursor = prev;
            }
            steps.reverse();
            MotionScript { steps }
        })
        .collect()
}

/// Recompute both gadget tables from scratch by BFS.
pub fn compute_gadget_tables() -> GadgetTables {
    GadgetTables { three_by_two: bfs_tables(3), four_by_two: bfs_tables(4) }
}

pub fn serialize_tables(tables: &GadgetTables) -> String {
    let mut out = String::from("gadget-tables v1\n");
    for (h, scripts) in [(3usize, &tables.three_by_two), (4, &tables.four_by_two)] {
        for (mask, script) in scripts.iter().enumerate() {
            writeln!(out, "shape {h}x2 mask {mask} len {}", script.len()).unwrap();
            for step in &script.steps {
                let moves: Vec<String> = step
                    .iter()
                    .map(|(a, b)| format!("{},{}>{},{}", a.x, a.y, b.x, b.y))
                    .collect();
                writeln!(out, "{}", moves.join(" ")).unwrap();
            }
        }
    }
    out
}

pub fn parse_tables(text: &str) -> Result<GadgetTables, MotionError> {
    let bad = |msg: &str| MotionError::BadTargets(format!("gadget table: {msg}"));
    let mut lines = text.lines();
    if lines.next() != Some("gadget-tables v1") {
        return Err(bad("missing version header"));
    }
    let mut three = vec![MotionScript::default(); 8];
    let mut four = vec![MotionScript::default(); 16];
    while let Some(header) = lines.next() {
        let toks: Vec<&str> = header.split(' ').collect();
        if toks.len() != 6 || toks[0] != "shape" || toks[2] != "mask" || toks[4] != "len" {
            return Err(bad("malformed script header"));
        }
        let mask: usize = toks[3].parse().map_err(|_| bad("bad mask"))?;
        let len: usize = toks[5].parse().map_err(|_| bad("bad len"))?;
        let mut steps = Vec::with_capacity(len);
        for _ in 0..len {
            let line = lines.next().ok_or_else(|| bad("truncated script"))?;
            let mut step: StepMoves = Vec::new();
            for mv in line.split(' ') {
                let (from, to) = mv.split_once('>').ok_or_else(|| bad("bad move"))?;
                let parse_pos = |s: &str| -> Result<Position, MotionError> {
                    let (x, y) = s.split_once(',').ok_or_else(|| bad("bad position"))?;
                    Ok(Position::new(
                        x.parse().map_err(|_| bad("bad coord"))?,
                        y.parse().map_err(|_| bad("bad coord"))?,
                    ))
                };
                step.push((parse_pos(from)?, parse_pos(to)?));
            }
            steps.push(step);
        }
        let script = MotionScript { steps };
        match toks[1] {
            "3x2" if mask < 8 => three[mask] = script,
            "4x2" if mask < 16 => four[mask] = script,
            _ => return Err(bad("unknown shape or mask out of range")),
        }
    }
    Ok(GadgetTables { three_by_two: three, four_by_two: four })
}

/// The tables shipped with the crate, parsed once.
pub fn embedded_tables() -> &'static GadgetTables {
    static TABLES: OnceLock<GadgetTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        parse_tables(GADGET_TABLE_DATA).expect("embedded gadget table data is well-formed")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridMap;
    use crate::motion::validate_script;

    fn full_occupancy(h: i32) -> Vec<Position> {
        (1..=h)
            .flat_map(|x| (1..=2).map(move |y| Position::new(x, y)))
            .collect()
    }

    fn check_tables(h: usize, scripts: &[MotionScript], max_len: usize) {
        let grid = GridMap::new(h as i32, 2).unwrap();
        let occ = full_occupancy(h as i32);
        assert_eq!(scripts.len(), 1 << h);
        for (mask, script) in scripts.iter().enumerate() {
            assert!(
                script.len() <= max_len,
                "{h}x2 mask {mask}: length {} > {max_len}",
                script.len()
            );
            let end = validate_script(&grid, &occ, script).unwrap();
            for r in 0..h {
                let (a, b) = (2 * r, 2 * r + 1);
                if mask >> r & 1 == 1 {
                    assert_eq!(end[a], occ[b], "mask {mask} row {r} must swap");
                    assert_eq!(end[b], occ[a]);
                } else {
                    assert_eq!(end[a], occ[a], "mask {mask} row {r} must hold");
                    assert_eq!(end[b], occ[b]);
                }
            }
        }
    }

    #[test]
    fn three_by_two_scripts_are_valid_and_at_most_7() {
        let tables = compute_gadget_tables();
        check_tables(3, &tables.three_by_two, 7);
        // the all-pairs swap needs exactly seven steps
        assert_eq!(tables.three_by_two[0b111].len(), 7);
        assert_eq!(tables.three_by_two[0].len(), 0);
        let max = tables.three_by_two.iter().map(|s| s.len()).max().unwrap();
        assert_eq!(max, 7);
    }

    #[test]
    fn four_by_two_scripts_are_valid_and_at_most_6() {
        let tables = compute_gadget_tables();
        check_tables(4, &tables.four_by_two, 6);
    }

    #[test]
    fn middle_pair_swap_takes_three_cyclic_rotations() {
        // a pair with neighbors on both sides swaps in three steps
        let tables = compute_gadget_tables();
        assert_eq!(tables.three_by_two[0b010].len(), 3);
    }

    #[test]
    fn embedded_data_matches_regeneration_byte_exactly() {
        let computed = compute_gadget_tables();
        assert_eq!(serialize_tables(&computed), GADGET_TABLE_DATA);
        // and the embedded parse agrees with the computed scripts
        let parsed = embedded_tables();
        for (a, b) in computed.three_by_two.iter().zip(parsed.three_by_two.iter()) {
            assert_eq!(a, b);
        }
        for (a, b) in computed.four_by_two.iter().zip(parsed.four_by_two.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn serialization_round_trips() {
        let tables = compute_gadget_tables();
        let text = serialize_tables(&tables);
        let back = parse_tables(&text).unwrap();
        assert_eq!(serialize_tables(&back), text);
    }
}
