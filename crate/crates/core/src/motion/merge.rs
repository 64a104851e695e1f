//! Linear merge shuffle: arbitrary reordering of a full line of robots on
//! a 2-line band, merge-sort style. Robots moving toward lower coordinates
//! stay on the parking line; robots moving toward higher coordinates drop
//! into the channel, advance, and climb back out, so the two directions
//! never share a line.
//!
//! Blocks follow a balanced top-down split, executed bottom-up with a
//! barrier between phases. Per phase no robot travels farther than the
//! opposite half plus the two channel hops, which telescopes to a total
//! length of at most L + 2 * (ceil(log2 L) + 1).
//!
//! Unoccupied slots ride along as ghost items: they participate in the
//! simulation but emit no moves, which keeps the choreography valid on
//! lines that are not physically full.

use super::{MotionError, MotionScript, StepMoves};
use crate::grid::Position;
use crate::rubik::Axis;
use std::collections::HashMap;

/// A 2-line merge lane: `park` holds the robots, `chan` is the adjacent
/// working line. `Row` lanes travel along columns, `Col` lanes along rows.
#[derive(Clone, Debug)]
pub struct MergeLane {
    pub axis: Axis,
    pub park: i32,
    pub chan: i32,
    /// First axis coordinate (1-based).
    pub start: i32,
    pub len: usize,
}

impl MergeLane {
    pub fn at(&self, line: i32, coord: i32) -> Position {
        match self.axis {
            Axis::Row => Position::new(line, coord),
            Axis::Col => Position::new(coord, line),
        }
    }

    fn coord(&self, slot: usize) -> i32 {
        self.start + slot as i32
    }
}

/// Recorded merge jobs per phase, smallest blocks first.
fn phase_jobs(len: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let mut by_depth: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    fn split(
        lo: usize,
        hi: usize,
        depth: usize,
        out: &mut Vec<Vec<(usize, usize, usize)>>,
    ) {
        if hi - lo <= 1 {
            return;
        }
        let mid = lo + (hi - lo + 1) / 2;
        if out.len() <= depth {
            out.resize(depth + 1, Vec::new());
        }
        out[depth].push((lo, mid, hi));
        split(lo, mid, depth + 1, out);
        split(mid, hi, depth + 1, out);
    }
    split(0, len, 0, &mut by_depth);
    by_depth.reverse(); // deepest (smallest) first
    by_depth
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Line {
    Park,
    Chan,
}

/// Sort a full line: item at slot `s` ends at slot `perm[s]`.
/// `occupied[s]` marks physical robots; the rest are ghosts whose moves
/// are simulated but not emitted.
pub fn linear_merge_shuffle(
    lane: &MergeLane,
    occupied: &[bool],
    perm: &[usize],
) -> Result<MotionScript, MotionError> {
    let len = lane.len;
    if perm.len() != len || occupied.len() != len {
        return Err(MotionError::BadTargets("permutation size mismatch".into()));
    }
    {
        let mut seen = vec![false; len];
        for &d in perm {
            if d >= len || seen[d] {
                return Err(MotionError::BadTargets("not a permutation".into()));
            }
            seen[d] = true;
        }
    }
    if perm.iter().enumerate().all(|(s, &d)| s == d) {
        return Ok(MotionScript::default());
    }

    // item k starts at slot k; track (line, slot-coordinate index)
    let mut pos: Vec<(Line, usize)> = (0..len).map(|s| (Line::Park, s)).collect();
    let mut script = MotionScript::default();
    let phases = phase_jobs(len);
    let n_phases = phases.len();

    for jobs in phases {
        // per item: final slot within its current block after this phase
        let mut final_slot: Vec<Option<usize>> = vec![None; len];
        for &(lo, _mid, hi) in &jobs {
            // items currently in [lo, hi): sorted halves merge into rank order
            let mut items: Vec<usize> = (0..len)
                .filter(|&i| {
                    let (line, s) = pos[i];
                    line == Line::Park && s >= lo && s < hi
                })
                .collect();
            items.sort_by_key(|&i| perm[i]);
            for (rank, &i) in items.iter().enumerate() {
                final_slot[i] = Some(lo + rank);
            }
        }
        // simulate until every item with a final slot has parked there
        let mut guard = 0usize;
        loop {
            let done = (0..len).all(|i| match final_slot[i] {
                Some(f) => pos[i] == (Line::Park, f),
                None => true,
            });
            if done {
                break;
            }
            guard += 1;
            assert!(guard <= 2 * len + 16, "merge failed to converge");

            // occupancy maps
            let mut occ: HashMap<(Line, usize), usize> = HashMap::with_capacity(len * 2);
            for i in 0..len {
                occ.insert(pos[i], i);
            }
            // proposals; an ascend waits while any left-mover bound further
            // left still has to march across the slot, or it would wall the
            // stream off the parking line
            let crossing_blocks = |f: usize| -> bool {
                (0..len).any(|j| match (final_slot[j], pos[j]) {
                    (Some(fj), (Line::Park, sj)) => fj < f && sj > f && sj > fj,
                    _ => false,
                })
            };
            let mut want: Vec<Option<(Line, usize)>> = vec![None; len];
            for i in 0..len {
                let Some(fin) = final_slot[i] else { continue };
                let (line, s) = pos[i];
                match line {
                    Line::Park => {
                        if fin > s {
                            want[i] = Some((Line::Chan, s));
                        } else if fin < s {
                            want[i] = Some((Line::Park, s - 1));
                        }
                    }
                    Line::Chan => {
                        if s < fin {
                            want[i] = Some((Line::Chan, s + 1));
                        } else {
                            debug_assert_eq!(s, fin);
                            if !crossing_blocks(fin) {
                                want[i] = Some((Line::Park, fin));
                            }
                        }
                    }
                }
            }
            // follow-chase fixpoint: a move executes if its target is empty
            // or its occupant also executes, and no accepted move already
            // claims the target. Park-line marchers get priority over
            // ascenders so the stream never stalls behind a climb-out.
            let mut order: Vec<usize> = (0..len).filter(|&i| want[i].is_some()).collect();
            order.sort_by_key(|&i| {
                let climbs = matches!((pos[i].0, want[i].unwrap().0), (Line::Chan, Line::Park));
                (climbs, i)
            });
            let mut accepted = vec![false; len];
            let mut claimed: HashMap<(Line, usize), ()> = HashMap::new();
            loop {
                let mut changed = false;
                for &i in &order {
                    if accepted[i] {
                        continue;
                    }
                    let target = want[i].unwrap();
                    if claimed.contains_key(&target) {
                        continue;
                    }
                    let free = match occ.get(&target) {
                        None => true,
                        Some(&j) => accepted[j],
                    };
                    if free {
                        accepted[i] = true;
                        claimed.insert(target, ());
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            let mut step: StepMoves = Vec::new();
            let mut progressed = false;
            for i in 0..len {
                if !accepted[i] {
                    continue;
                }
                let target = want[i].unwrap();
                let (fl, fs) = match pos[i] {
                    (Line::Park, s) => (lane.park, s),
                    (Line::Chan, s) => (lane.chan, s),
                };
                let (tl, ts) = match target {
                    (Line::Park, s) => (lane.park, s),
                    (Line::Chan, s) => (lane.chan, s),
                };
                if occupied[i] {
                    step.push((
                        lane.at(fl, lane.coord(fs)),
                        lane.at(tl, lane.coord(ts)),
                    ));
                }
                pos[i] = target;
                progressed = true;
            }
            assert!(progressed, "merge step made no progress");
            script.push_step(step);
        }
    }

    // item k must now sit at park slot perm[k]
    for i in 0..len {
        debug_assert_eq!(pos[i], (Line::Park, perm[i]));
    }
    let bound = len + 2 * (n_phases + 1);
    if script.len() > bound {
        return Err(MotionError::BoundExceeded {
            got: script.len(),
            bound,
            context: "linear merge shuffle".into(),
        });
    }
    Ok(script)
}

/// Length bound from the merge construction: L + 2 (ceil(log2 L) + 1).
pub fn merge_length_bound(len: usize) -> usize {
    let log = (usize::BITS - len.next_power_of_two().leading_zeros() - 1) as usize;
    len + 2 * (log + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridMap;
    use crate::motion::validate_script;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lane(len: usize) -> MergeLane {
        MergeLane { axis: Axis::Row, park: 1, chan: 2, start: 1, len }
    }

    fn run_full(len: usize, perm: &[usize]) -> usize {
        let l = lane(len);
        let script = linear_merge_shuffle(&l, &vec![true; len], perm).unwrap();
        let grid = GridMap::new(2, len as i32).unwrap();
        let occ: Vec<Position> = (0..len).map(|s| Position::new(1, s as i32 + 1)).collect();
        let end = validate_script(&grid, &occ, &script).unwrap();
        for (i, &p) in end.iter().enumerate() {
            assert_eq!(p, Position::new(1, perm[i] as i32 + 1), "item {i}");
        }
        script.len()
    }

    #[test]
    fn identity_is_empty() {
        let l = lane(8);
        let perm: Vec<usize> = (0..8).collect();
        let script = linear_merge_shuffle(&l, &vec![true; 8], &perm).unwrap();
        assert!(script.is_empty());
    }

    #[test]
    fn all_permutations_of_small_lines_sort_within_bound() {
        fn heap_perms(n: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut a: Vec<usize> = (0..n).collect();
            fn rec(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if k == 1 {
                    out.push(a.clone());
                    return;
                }
                for i in 0..k {
                    rec(k - 1, a, out);
                    if k % 2 == 0 {
                        a.swap(i, k - 1);
                    } else {
                        a.swap(0, k - 1);
                    }
                }
            }
            rec(n, &mut a, &mut out);
            out
        }
        for n in 1..=5 {
            for perm in heap_perms(n) {
                let len = run_full(n, &perm);
                assert!(len <= merge_length_bound(n), "{perm:?} took {len}");
            }
        }
    }

    #[test]
    fn reverse_of_16_sorts_within_26() {
        let perm: Vec<usize> = (0..16).rev().collect();
        let len = run_full(16, &perm);
        assert!(len <= 16 + 2 * (4 + 1), "reverse-16 took {len}");
    }

    #[test]
    fn demonstration_permutation_on_2x8() {
        // a scrambled 2x8 line: every robot crosses at least one block
        let perm = vec![4, 6, 1, 3, 0, 7, 2, 5];
        let len = run_full(8, &perm);
        assert!(len <= merge_length_bound(8));
    }

    #[test]
    fn random_permutations_with_ghost_holes_stay_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for len in [6usize, 12, 20] {
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..len).collect();
                perm.shuffle(&mut rng);
                let occupied: Vec<bool> = (0..len).map(|i| i % 3 != 1).collect();
                let l = lane(len);
                let script = linear_merge_shuffle(&l, &occupied, &perm).unwrap();
                let grid = GridMap::new(2, len as i32).unwrap();
                let occ: Vec<Position> = (0..len)
                    .filter(|&s| occupied[s])
                    .map(|s| Position::new(1, s as i32 + 1))
                    .collect();
                let end = validate_script(&grid, &occ, &script).unwrap();
                let mut idx = 0;
                for s in 0..len {
                    if occupied[s] {
                        assert_eq!(end[idx], Position::new(1, perm[s] as i32 + 1));
                        idx += 1;
                    }
                }
                assert!(script.len() <= merge_length_bound(len));
            }
        }
    }

    #[test]
    fn vertical_lane_works_transposed() {
        let l = MergeLane { axis: Axis::Col, park: 3, chan: 4, start: 1, len: 6 };
        let perm = vec![5, 4, 3, 2, 1, 0];
        let script = linear_merge_shuffle(&l, &vec![true; 6], &perm).unwrap();
        let grid = GridMap::new(6, 4).unwrap();
        let occ: Vec<Position> = (0..6).map(|s| Position::new(s as i32 + 1, 3)).collect();
        let end = validate_script(&grid, &occ, &script).unwrap();
        for (i, &p) in end.iter().enumerate() {
            assert_eq!(p, Position::new(perm[i] as i32 + 1, 3));
        }
    }

    #[test]
    fn bound_matches_formula() {
        assert_eq!(merge_length_bound(8), 8 + 2 * 4);
        assert_eq!(merge_length_bound(16), 16 + 2 * 5);
        assert_eq!(merge_length_bound(32), 32 + 2 * 6);
    }
}
