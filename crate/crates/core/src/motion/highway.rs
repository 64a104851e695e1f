//! Highway shuffle on a 3-line band: robots park on the center line, and
//! movers route through the two side lanes, one lane per travel direction.
//!
//! Phase 1 (one step): every mover side-steps into its direction's lane.
//! Phase 2: lane robots advance one cell per step, turning into their
//! landing slot on arrival; followers may enter a cell as it is vacated,
//! so convoys never stall. Phase 3: at most a few local steps permute each
//! cell's robots onto exact pinned slots. Stationary robots never move in
//! phases 1-2. Total length is at most L + 5 for a band of length L.

use super::recenter::{local_rearrange, LocalMoveCache, Rect};
use super::{merge_scripts, MotionError, MotionScript, StepMoves};
use crate::grid::Position;
use crate::rubik::Axis;

/// Contiguous run of axis coordinates (1-based, inclusive start).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: i32,
    pub len: i32,
}

impl Span {
    pub fn end(&self) -> i32 {
        self.start + self.len - 1
    }

    pub fn contains(&self, coord: i32) -> bool {
        coord >= self.start && coord <= self.end()
    }

    pub fn coords(&self) -> impl Iterator<Item = i32> {
        self.start..=self.end()
    }
}

/// A 3-line band: `Row` bands span three grid rows and travel along
/// columns; `Col` bands are the transpose.
#[derive(Clone, Debug)]
pub struct HighwayBand {
    pub axis: Axis,
    /// Lane for decreasing-coordinate movers (lower line index).
    pub lane_low: i32,
    pub parking: i32,
    /// Lane for increasing-coordinate movers.
    pub lane_high: i32,
    /// Cell spans along the travel axis (may have mixed widths).
    pub cells: Vec<Span>,
}

impl HighwayBand {
    pub fn at(&self, line: i32, coord: i32) -> Position {
        match self.axis {
            Axis::Row => Position::new(line, coord),
            Axis::Col => Position::new(coord, line),
        }
    }

    pub fn length(&self) -> i32 {
        let first = self.cells.first().map_or(0, |s| s.start);
        let last = self.cells.last().map_or(0, |s| s.end());
        last - first + 1
    }

    fn cell_of(&self, coord: i32) -> Option<usize> {
        self.cells.iter().position(|s| s.contains(coord))
    }
}

/// Per-robot task: current parking coordinate, target cell, and optional
/// exact landing coordinate (the pinned slot for final rounds).
#[derive(Clone, Debug)]
pub struct HighwayTask {
    pub current: Vec<i32>,
    pub target_cell: Vec<usize>,
    pub pinned: Vec<Option<i32>>,
    /// Parking coordinates unusable for parking (obstacle pattern).
    pub blocked: Vec<i32>,
}

pub fn highway_shuffle(
    band: &HighwayBand,
    task: &HighwayTask,
    cache: &mut LocalMoveCache,
) -> Result<MotionScript, MotionError> {
    let n = task.current.len();
    assert_eq!(task.target_cell.len(), n);
    assert_eq!(task.pinned.len(), n);
    let blocked = &task.blocked;

    // validate inputs
    for (i, &c) in task.current.iter().enumerate() {
        if band.cell_of(c).is_none() {
            return Err(MotionError::BadTargets(format!("robot {i} parked off-band at {c}")));
        }
        if blocked.contains(&c) {
            return Err(MotionError::BadTargets(format!("robot {i} parked on blocked slot {c}")));
        }
    }
    {
        let mut sorted = task.current.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return Err(MotionError::BadTargets("duplicate parking coordinates".into()));
        }
    }
    for (i, &cell) in task.target_cell.iter().enumerate() {
        if cell >= band.cells.len() {
            return Err(MotionError::BadTargets(format!("robot {i}: target cell {cell}")));
        }
        if let Some(pin) = task.pinned[i] {
            if !band.cells[cell].contains(pin) || blocked.contains(&pin) {
                return Err(MotionError::BadTargets(format!("robot {i}: pin {pin} unusable")));
            }
        }
    }
    {
        let mut pins: Vec<i32> = task.pinned.iter().filter_map(|p| *p).collect();
        pins.sort_unstable();
        let len = pins.len();
        pins.dedup();
        if pins.len() != len {
            return Err(MotionError::BadTargets("duplicate pinned slots".into()));
        }
    }

    // capacity per target cell
    for (ci, span) in band.cells.iter().enumerate() {
        let free = span.coords().filter(|c| !blocked.contains(c)).count();
        let incoming = task.target_cell.iter().filter(|&&t| t == ci).count();
        if incoming > free {
            return Err(MotionError::CapacityExceeded(format!(
                "cell {ci}: {incoming} robots for {free} slots"
            )));
        }
    }

    // stayers keep their coordinate through phases 1-2
    let mut is_mover = vec![false; n];
    for i in 0..n {
        is_mover[i] = band.cell_of(task.current[i]) != Some(task.target_cell[i]);
    }

    // landing assignment: per cell, free slots go to movers; pinned coords
    // are honored when available so phase 3 shrinks.
    let mut landing = vec![0i32; n];
    for (ci, span) in band.cells.iter().enumerate() {
        let stay_coords: Vec<i32> = (0..n)
            .filter(|&i| !is_mover[i] && task.target_cell[i] == ci)
            .map(|i| task.current[i])
            .collect();
        let mut free: Vec<i32> = span
            .coords()
            .filter(|c| !blocked.contains(c) && !stay_coords.contains(c))
            .collect();
        let mut movers: Vec<usize> = (0..n)
            .filter(|&i| is_mover[i] && task.target_cell[i] == ci)
            .collect();
        movers.sort_by_key(|&i| task.current[i]);
        // honor available pins first
        let mut rest = Vec::new();
        for &i in &movers {
            match task.pinned[i] {
                Some(pin) if free.contains(&pin) => {
                    free.retain(|&c| c != pin);
                    landing[i] = pin;
                }
                _ => rest.push(i),
            }
        }
        for &i in &rest {
            landing[i] = free.remove(0);
        }
    }

    // phases 1-2: enter lanes, stream, exit
    let mut script = MotionScript::default();
    let mut enter: StepMoves = Vec::new();
    let mut active: Vec<(usize, i32, i32, i32)> = Vec::new(); // (robot, lane line, coord, landing)
    for i in 0..n {
        if !is_mover[i] {
            continue;
        }
        let dir = (landing[i] - task.current[i]).signum();
        debug_assert!(dir != 0);
        let lane = if dir < 0 { band.lane_low } else { band.lane_high };
        enter.push((band.at(band.parking, task.current[i]), band.at(lane, task.current[i])));
        active.push((i, lane, task.current[i], landing[i]));
    }
    if !enter.is_empty() {
        script.push_step(enter);
        while !active.is_empty() {
            let mut step: StepMoves = Vec::new();
            let mut still = Vec::new();
            for (robot, lane, coord, land) in active {
                if coord == land {
                    step.push((band.at(lane, coord), band.at(band.parking, coord)));
                } else {
                    let dir = (land - coord).signum();
                    step.push((band.at(lane, coord), band.at(lane, coord + dir)));
                    still.push((robot, lane, coord + dir, land));
                }
            }
            script.push_step(step);
            active = still;
        }
    }

    // phase 3: per-cell exact permutation onto pinned slots
    let mut final_coord = vec![0i32; n];
    for i in 0..n {
        final_coord[i] = if is_mover[i] { landing[i] } else { task.current[i] };
    }
    let mut local_scripts = Vec::new();
    for (ci, span) in band.cells.iter().enumerate() {
        let members: Vec<usize> = (0..n).filter(|&i| task.target_cell[i] == ci).collect();
        if members.is_empty() {
            continue;
        }
        let mut want = vec![0i32; members.len()];
        let mut taken: Vec<i32> = members
            .iter()
            .filter_map(|&i| task.pinned[i])
            .collect();
        let mut displaced = Vec::new();
        for (mi, &i) in members.iter().enumerate() {
            match task.pinned[i] {
                Some(pin) => want[mi] = pin,
                None => {
                    if taken.contains(&final_coord[i]) {
                        displaced.push(mi);
                    } else {
                        want[mi] = final_coord[i];
                        taken.push(final_coord[i]);
                    }
                }
            }
        }
        let mut spare: Vec<i32> = span
            .coords()
            .filter(|c| !blocked.contains(c) && !taken.contains(c))
            .collect();
        for &mi in &displaced {
            want[mi] = spare.remove(0);
        }
        let moving = members
            .iter()
            .zip(want.iter())
            .any(|(&i, &w)| final_coord[i] != w);
        if !moving {
            continue;
        }
        let rect = match band.axis {
            Axis::Row => Rect { x0: band.lane_low, y0: span.start, h: 3, w: span.len },
            Axis::Col => Rect { x0: span.start, y0: band.lane_low, h: span.len, w: 3 },
        };
        let blocked_pos: Vec<Position> =
            blocked.iter().filter(|c| span.contains(**c)).map(|&c| band.at(band.parking, c)).collect();
        let from: Vec<Position> =
            members.iter().map(|&i| band.at(band.parking, final_coord[i])).collect();
        let to: Vec<Position> = want.iter().map(|&w| band.at(band.parking, w)).collect();
        local_scripts.push(local_rearrange(cache, rect, &blocked_pos, &from, &to)?);
    }
    script.append(merge_scripts(local_scripts));

    let bound = band.length() as usize + 5;
    if script.len() > bound {
        return Err(MotionError::BoundExceeded {
            got: script.len(),
            bound,
            context: "highway shuffle".into(),
        });
    }
    Ok(script)
}
