//! Parallel odd-even transposition sort on fully occupied grids, the line
//! shuffle behind RTM. Comparator swaps are realized by the 3x2 / 4x2
//! gadget scripts; the perpendicular dimension is partitioned into gadget
//! groups of 3 (with 4-line groups absorbing a remainder).
//!
//! Every line sorts simultaneously: round k swaps out-of-order pairs at
//! positions (k mod 2, k mod 2 + 2, ...), each batch costing at most 7
//! steps, for at most 7L steps over L rounds.

use super::gadget::GadgetTables;
use super::{merge_scripts, MotionError, MotionScript};
use crate::rubik::Axis;

/// Partition `n` parallel lines into gadget groups of height 3 or 4.
/// Heights 1, 2, and 5 admit no such partition and are unsupported (the
/// width-2 grid case is unsupported by design).
pub fn partition_gadget_groups(n: usize) -> Result<Vec<(usize, usize)>, MotionError> {
    let err = |msg: String| Err(MotionError::UnsupportedDimension(msg));
    match n {
        0 | 1 | 2 => return err(format!("{n} parallel lines: need at least 3")),
        5 => return err("5 parallel lines cannot be partitioned into 3s and 4s".into()),
        _ => {}
    }
    let mut groups = Vec::new();
    let fours = match n % 3 {
        0 => 0,
        1 => 1,
        _ => 2,
    };
    let threes = (n - 4 * fours) / 3;
    let mut start = 0;
    for _ in 0..threes {
        groups.push((start, 3));
        start += 3;
    }
    for _ in 0..fours {
        groups.push((start, 4));
        start += 4;
    }
    Ok(groups)
}

/// Sort every line of a fully occupied `lines x length` region at once.
/// `targets[line][slot]` is the destination slot (0-based) of the item
/// currently at `slot`. With `axis == Row`, lines are grid rows and slots
/// run along columns; `Col` is the transpose. Coordinates are global,
/// 1-based, with the region anchored at (1, 1); callers translate.
pub fn odd_even_line_shuffle(
    lines: usize,
    length: usize,
    axis: Axis,
    targets: &[Vec<usize>],
    tables: &GadgetTables,
) -> Result<MotionScript, MotionError> {
    if targets.len() != lines {
        return Err(MotionError::BadTargets(format!(
            "expected {lines} line permutations, got {}",
            targets.len()
        )));
    }
    let mut keys: Vec<Vec<usize>> = Vec::with_capacity(lines);
    for (i, perm) in targets.iter().enumerate() {
        if perm.len() != length {
            return Err(MotionError::BadTargets(format!("line {i}: wrong permutation size")));
        }
        let mut seen = vec![false; length];
        for &d in perm {
            if d >= length || seen[d] {
                return Err(MotionError::BadTargets(format!("line {i}: not a permutation")));
            }
            seen[d] = true;
        }
        keys.push(perm.clone());
    }
    if keys.iter().all(|k| k.iter().enumerate().all(|(s, &d)| s == d)) {
        return Ok(MotionScript::default());
    }
    let groups = partition_gadget_groups(lines)?;

    let mut script = MotionScript::default();
    let mut round = 0usize;
    loop {
        let sorted = keys.iter().all(|k| k.iter().enumerate().all(|(s, &d)| s == d));
        if sorted {
            break;
        }
        assert!(round <= length + 1, "odd-even sort failed to converge");
        let parity = round % 2;
        let mut batch: Vec<MotionScript> = Vec::new();
        let mut pair = parity;
        while pair + 1 < length {
            for &(gstart, gsize) in &groups {
                let mut mask = 0usize;
                for r in 0..gsize {
                    let line = gstart + r;
                    if keys[line][pair] > keys[line][pair + 1] {
                        mask |= 1 << r;
                    }
                }
                if mask != 0 {
                    // gadget local coords: rows 1..=gsize, cols 1..=2
                    let local = &tables.scripts(gsize)[mask];
                    let placed = match axis {
                        Axis::Row => local.translated(gstart as i32, pair as i32),
                        Axis::Col => local.transposed().translated(pair as i32, gstart as i32),
                    };
                    batch.push(placed);
                    for r in 0..gsize {
                        if mask >> r & 1 == 1 {
                            keys[gstart + r].swap(pair, pair + 1);
                        }
                    }
                }
            }
            pair += 2;
        }
        script.append(merge_scripts(batch));
        round += 1;
    }
    let bound = 7 * length;
    if script.len() > bound {
        return Err(MotionError::BoundExceeded {
            got: script.len(),
            bound,
            context: "odd-even line shuffle".into(),
        });
    }
    Ok(script)
}
