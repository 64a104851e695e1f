//! Text formats for instances and plans.
//!
//! Instance format (ASCII, LF-terminated lines):
//! ```text
//! rows cols n labeled   <- labeled is 0 or 1
//! k                     <- obstacle count
//! ox oy                 <- k obstacle lines, row-major order
//! sx sy gx gy           <- n robot lines
//! ```
//!
//! Plan format:
//! ```text
//! n T
//! x y                   <- per robot, T+1 position lines
//! ```
//!
//! Both formats round-trip bit-exactly: `read(write(v)) == v` and
//! `write(read(s)) == s` for canonical input.

use crate::grid::{GridMap, Instance, Plan, Position};
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("grid: {0}")]
    Grid(#[from] crate::grid::GridError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

struct Lines<'a> {
    iter: std::str::Lines<'a>,
    num: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Self {
        Lines { iter: s.lines(), num: 0 }
    }

    fn next_ints(&mut self, expect: usize) -> Result<Vec<i64>, FormatError> {
        self.num += 1;
        let line = self
            .iter
            .next()
            .ok_or_else(|| parse_err(self.num, "unexpected end of input"))?;
        let vals: Result<Vec<i64>, _> = line.split(' ').map(|t| t.parse::<i64>()).collect();
        let vals = vals.map_err(|e| parse_err(self.num, format!("bad integer: {e}")))?;
        if vals.len() != expect {
            return Err(parse_err(
                self.num,
                format!("expected {expect} fields, got {}", vals.len()),
            ));
        }
        Ok(vals)
    }
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let g = &instance.grid;
    let labeled = if instance.labeled { 1 } else { 0 };
    writeln!(out, "{} {} {} {}", g.rows(), g.cols(), instance.robots(), labeled).unwrap();
    let obstacles = g.obstacles_sorted();
    writeln!(out, "{}", obstacles.len()).unwrap();
    for o in obstacles {
        writeln!(out, "{} {}", o.x, o.y).unwrap();
    }
    for (s, t) in instance.starts.iter().zip(instance.goals.iter()) {
        writeln!(out, "{} {} {} {}", s.x, s.y, t.x, t.y).unwrap();
    }
    out
}

pub fn read_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = Lines::new(text);
    let header = lines.next_ints(4)?;
    let (rows, cols, n, labeled) = (header[0], header[1], header[2], header[3]);
    if labeled != 0 && labeled != 1 {
        return Err(parse_err(1, "labeled flag must be 0 or 1"));
    }
    let k = lines.next_ints(1)?[0];
    if k < 0 || n < 0 {
        return Err(parse_err(2, "negative count"));
    }
    let mut obstacles = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let o = lines.next_ints(2)?;
        obstacles.push(Position::new(o[0] as i32, o[1] as i32));
    }
    let grid = GridMap::with_obstacles(rows as i32, cols as i32, obstacles)?;
    let mut starts = Vec::with_capacity(n as usize);
    let mut goals = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let r = lines.next_ints(4)?;
        starts.push(Position::new(r[0] as i32, r[1] as i32));
        goals.push(Position::new(r[2] as i32, r[3] as i32));
    }
    let instance = Instance::new(grid, starts, goals, labeled == 1);
    instance.validate()?;
    Ok(instance)
}

pub fn write_plan(plan: &Plan) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", plan.robots(), plan.horizon()).unwrap();
    for path in &plan.paths {
        for p in path {
            writeln!(out, "{} {}", p.x, p.y).unwrap();
        }
    }
    out
}

pub fn read_plan(text: &str) -> Result<Plan, FormatError> {
    let mut lines = Lines::new(text);
    let header = lines.next_ints(2)?;
    let (n, t) = (header[0], header[1]);
    if n < 0 || t < 0 {
        return Err(parse_err(1, "negative count"));
    }
    let mut paths = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut path = Vec::with_capacity(t as usize + 1);
        for _ in 0..=t {
            let p = lines.next_ints(2)?;
            path.push(Position::new(p[0] as i32, p[1] as i32));
        }
        paths.push(path);
    }
    Ok(Plan { paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pos(x: i32, y: i32) -> Position {
        Position::new(x, y)
    }

    #[test]
    fn instance_round_trip_with_obstacles() {
        let grid = GridMap::with_obstacles(3, 3, [pos(2, 2)]).unwrap();
        let inst = Instance::new(grid, vec![pos(1, 1), pos(3, 3)], vec![pos(3, 1), pos(1, 3)], true);
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        assert_eq!(write_instance(&back), text);
        assert_eq!(back.starts, inst.starts);
        assert_eq!(back.goals, inst.goals);
        assert!(back.labeled);
    }

    #[test]
    fn plan_round_trip() {
        let plan = Plan { paths: vec![vec![pos(1, 1), pos(1, 2)], vec![pos(2, 2), pos(2, 2)]] };
        let text = write_plan(&plan);
        assert_eq!(read_plan(&text).unwrap(), plan);
        assert_eq!(write_plan(&read_plan(&text).unwrap()), text);
    }

    #[test]
    fn truncated_input_is_rejected() {
        assert!(read_instance("3 3 1 1\n0\n").is_err());
        assert!(read_plan("1 2\n1 1\n").is_err());
    }

    proptest! {
        #[test]
        fn random_instances_round_trip(rows in 1i32..8, cols in 1i32..8, seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let grid = GridMap::new(rows, cols).unwrap();
            let mut cells: Vec<Position> = (1..=rows)
                .flat_map(|x| (1..=cols).map(move |y| pos(x, y)))
                .collect();
            let n = rng.gen_range(0..=cells.len());
            // starts: prefix of a shuffle; goals: prefix of another shuffle
            let starts: Vec<Position> = {
                for i in (1..cells.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    cells.swap(i, j);
                }
                cells[..n].to_vec()
            };
            let goals: Vec<Position> = {
                for i in (1..cells.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    cells.swap(i, j);
                }
                cells[..n].to_vec()
            };
            let inst = Instance::new(grid, starts, goals, true);
            let text = write_instance(&inst);
            let back = read_instance(&text).unwrap();
            prop_assert_eq!(write_instance(&back), text);
        }
    }
}
