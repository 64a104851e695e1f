//! Cell-local rearrangement by joint-state BFS, used to flip robots
//! between row parking and column parking between shuffle rounds and to
//! realize exact-slot permutations inside one cell.
//!
//! Cells are tiny (at most 5x5 with at most 5 robots), so optimal scripts
//! come from breadth-first search; results are memoized per normalized
//! (shape, obstacles, start, target) pattern.

use super::{MotionError, MotionScript, StepMoves};
use crate::grid::Position;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: i32,
    pub y0: i32,
    pub h: i32,
    pub w: i32,
}

impl Rect {
    pub fn contains(&self, p: Position) -> bool {
        p.x >= self.x0 && p.x < self.x0 + self.h && p.y >= self.y0 && p.y < self.y0 + self.w
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct MemoKey {
    h: i32,
    w: i32,
    blocked: Vec<u8>,
    from: Vec<u8>,
    to: Vec<u8>,
}

/// Memo cache shared across cells of one solve; patterns repeat heavily.
#[derive(Default)]
pub struct LocalMoveCache {
    map: HashMap<MemoKey, Option<MotionScript>>,
}

impl LocalMoveCache {
    pub fn new() -> Self {
        Self::default()
    }
}

const DELTAS: [(i32, i32); 5] = [(0, 0), (-1, 0), (1, 0), (0, -1), (0, 1)];

/// Optimal script moving labeled robots within `rect` from `from[i]` to
/// `to[i]`, avoiding `blocked` cells. All motion stays inside the rect.
pub fn local_rearrange(
    cache: &mut LocalMoveCache,
    rect: Rect,
    blocked: &[Position],
    from: &[Position],
    to: &[Position],
) -> Result<MotionScript, MotionError> {
    assert_eq!(from.len(), to.len());
    if from == to {
        return Ok(MotionScript::default());
    }
    let cell_of = |p: Position| -> u8 { ((p.x - rect.x0) * rect.w + (p.y - rect.y0)) as u8 };
    for &p in from.iter().chain(to.iter()) {
        assert!(rect.contains(p), "local rearrange outside its rect");
    }
    let mut blocked_idx: Vec<u8> = blocked.iter().filter(|&&p| rect.contains(p)).map(|&p| cell_of(p)).collect();
    blocked_idx.sort_unstable();
    let key = MemoKey {
        h: rect.h,
        w: rect.w,
        blocked: blocked_idx.clone(),
        from: from.iter().map(|&p| cell_of(p)).collect(),
        to: to.iter().map(|&p| cell_of(p)).collect(),
    };
    if let Some(cached) = cache.map.get(&key) {
        return cached
            .clone()
            .map(|s| s.translated(rect.x0 - 1, rect.y0 - 1))
            .ok_or_else(|| MotionError::LocalUnreachable(format!("{rect:?}")));
    }
    let result = bfs_labeled(rect, &blocked_idx, &key.from, &key.to);
    cache.map.insert(key, result.clone());
    result
        .map(|s| s.translated(rect.x0 - 1, rect.y0 - 1))
        .ok_or_else(|| MotionError::LocalUnreachable(format!("{rect:?}")))
}

/// BFS in rect-local coordinates (1-based inside an h x w box).
fn bfs_labeled(rect: Rect, blocked: &[u8], from: &[u8], to: &[u8]) -> Option<MotionScript> {
    let (h, w) = (rect.h, rect.w);
    let n_cells = (h * w) as usize;
    let free = |c: u8| !blocked.contains(&c);
    let start: Vec<u8> = from.to_vec();
    let goal: Vec<u8> = to.to_vec();
    if start == goal {
        return Some(MotionScript::default());
    }

    let mut parents: HashMap<Vec<u8>, (Vec<u8>, StepMoves)> = HashMap::new();
    let mut frontier = vec![start.clone()];
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    seen.insert(start.clone(), ());

    let to_pos = |c: u8| -> Position {
        Position::new((c as i32) / w + 1, (c as i32) % w + 1)
    };
    let to_cell = |p: Position| -> Option<u8> {
        if p.x < 1 || p.x > h || p.y < 1 || p.y > w {
            None
        } else {
            Some(((p.x - 1) * w + (p.y - 1)) as u8)
        }
    };

    // Depth cap: any in-cell rearrangement at our sizes resolves well under
    // this; it bounds runaway search on impossible inputs.
    const MAX_DEPTH: usize = 8;
    for _depth in 0..MAX_DEPTH {
        let mut next = Vec::new();
        for state in &frontier {
            // enumerate simultaneous move-sets robot by robot
            let k = state.len();
            let mut choice = vec![0usize; k];
            'moves: loop {
                // build candidate
                let mut occupied_next = vec![false; n_cells];
                let mut cand: Vec<u8> = Vec::with_capacity(k);
                let mut ok = true;
                for i in 0..k {
                    let p = to_pos(state[i]);
                    let d = DELTAS[choice[i]];
                    let q = Position::new(p.x + d.0, p.y + d.1);
                    match to_cell(q) {
                        Some(c) if free(c) && !occupied_next[c as usize] => {
                            occupied_next[c as usize] = true;
                            cand.push(c);
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                // edge swap check
                if ok {
                    'pairs: for i in 0..k {
                        for j in (i + 1)..k {
                            if cand[i] != state[i]
                                && cand[i] == state[j]
                                && cand[j] == state[i]
                            {
                                ok = false;
                                break 'pairs;
                            }
                        }
                    }
                }
                if ok && cand != *state && !seen.contains_key(&cand) {
                    let step: StepMoves = (0..k)
                        .filter(|&i| cand[i] != state[i])
                        .map(|i| (to_pos(state[i]), to_pos(cand[i])))
                        .collect();
                    seen.insert(cand.clone(), ());
                    parents.insert(cand.clone(), (state.clone(), step));
                    if cand == goal {
                        // reconstruct
                        let mut steps: Vec<StepMoves> = Vec::new();
                        let mut cursor = cand;
                        while cursor != start {
                            let (prev, step) = parents.get(&cursor).unwrap().clone();
                            steps.push(step);
                            cursor = prev;
                        }
                        steps.reverse();
                        return Some(MotionScript { steps });
                    }
                    next.push(cand);
                }
                // advance choice vector
                let mut i = 0;
                loop {
                    if i == k {
                        break 'moves;
                    }
                    choice[i] += 1;
                    if choice[i] < DELTAS.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}
