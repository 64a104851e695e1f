//! Cell geometry shared by the band pipelines: the grid partitioned into
//! horizontal bands (row segments) and cell columns (column segments),
//! with parking lines and per-cell slot accounting.
//!
//! Segments have the base size (3 for the highway pipeline, 2 for linear
//! merge); when a dimension is not a multiple of the base, the last
//! segment absorbs the remainder, so cells of width 4 or 5 can appear.
//! Wide cell columns route their column rounds through sub-strips: 2-wide
//! merge lanes on the outside, a 3-wide highway in the middle of width-5
//! strips.

use crate::grid::{GridMap, Position};
use crate::motion::highway::Span;

#[derive(Clone, Debug)]
pub struct CellGrid {
    pub rows: i32,
    pub cols: i32,
    /// 3 for highway cells, 2 for merge cells.
    pub base: i32,
    pub row_segs: Vec<Span>,
    pub col_segs: Vec<Span>,
    pub obstacle_mode: bool,
}

/// How a cell column realizes its column-round shuffles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripPart {
    /// 3-wide highway: lanes on `park - 1` and `park + 1`.
    Highway { park: i32, per_cell: usize },
    /// 2-wide merge lane.
    Merge { park: i32, chan: i32, per_cell: usize },
}

impl StripPart {
    pub fn per_cell(&self) -> usize {
        match self {
            StripPart::Highway { per_cell, .. } => *per_cell,
            StripPart::Merge { per_cell, .. } => *per_cell,
        }
    }

    pub fn park(&self) -> i32 {
        match self {
            StripPart::Highway { park, .. } => *park,
            StripPart::Merge { park, .. } => *park,
        }
    }
}

impl CellGrid {
    pub fn new(grid: &GridMap, base: i32, obstacle_mode: bool) -> Option<CellGrid> {
        let segs = |dim: i32| -> Option<Vec<Span>> {
            let k = dim / base;
            if k < 1 {
                return None;
            }
            let mut segs = Vec::with_capacity(k as usize);
            for i in 0..k {
                let start = i * base + 1;
                let len = if i == k - 1 { dim - start + 1 } else { base };
                segs.push(Span { start, len });
            }
            Some(segs)
        };
        Some(CellGrid {
            rows: grid.rows(),
            cols: grid.cols(),
            base,
            row_segs: segs(grid.rows())?,
            col_segs: segs(grid.cols())?,
            obstacle_mode,
        })
    }

    pub fn bands(&self) -> usize {
        self.row_segs.len()
    }

    pub fn cell_cols(&self) -> usize {
        self.col_segs.len()
    }

    /// Parking row of a band: the second row for base 3 (lanes on both
    /// sides), the first row for base 2 (channel below).
    pub fn parking_row(&self, band: usize) -> i32 {
        let off = if self.base == 3 { 1 } else { 0 };
        self.row_segs[band].start + off
    }

    pub fn band_of_row(&self, x: i32) -> usize {
        self.row_segs
            .iter()
            .position(|s| s.contains(x))
            .expect("row inside some band")
    }

    pub fn colseg_of(&self, y: i32) -> usize {
        self.col_segs
            .iter()
            .position(|s| s.contains(y))
            .expect("column inside some segment")
    }

    fn parking_blocked(&self, band: usize, y: i32) -> bool {
        // obstacle pattern blocks every cell center (3k+2, 3k'+2)
        self.obstacle_mode && self.parking_row(band) % 3 == 2 && y % 3 == 2
    }

    /// All parking slots of one band, ascending by column.
    pub fn band_slots(&self, band: usize) -> Vec<Position> {
        let row = self.parking_row(band);
        (1..=self.cols)
            .filter(|&y| !self.parking_blocked(band, y))
            .map(|y| Position::new(row, y))
            .collect()
    }

    /// Every parking slot on the grid (the anonymous-phase sink family).
    pub fn all_parking_slots(&self) -> Vec<Position> {
        (0..self.bands()).flat_map(|b| self.band_slots(b)).collect()
    }

    /// Parking-row slots of one cell, ascending.
    pub fn cell_row_slots(&self, band: usize, col: usize) -> Vec<i32> {
        let seg = self.col_segs[col];
        seg.coords().filter(|&y| !self.parking_blocked(band, y)).collect()
    }

    /// Items one cell holds between rounds (its matching block size).
    pub fn cell_capacity(&self, band: usize, col: usize) -> usize {
        self.cell_row_slots(band, col).len()
    }

    /// Matching slot layout: `cell_capacity` consecutive slots per cell
    /// column; returns (slot axis coordinates, owning cell column per slot).
    /// Capacities are band-independent (band 0 is representative).
    pub fn matching_slots(&self) -> (Vec<i32>, Vec<usize>) {
        let mut coords = Vec::new();
        let mut owner = Vec::new();
        for (j, seg) in self.col_segs.iter().enumerate() {
            let cap = self.cell_capacity(0, j);
            let center = seg.start + (seg.len - 1) / 2;
            for _ in 0..cap {
                coords.push(center);
                owner.push(j);
            }
        }
        (coords, owner)
    }

    /// Column-round structure of one cell column.
    pub fn strip_parts(&self, col: usize) -> Vec<StripPart> {
        let seg = self.col_segs[col];
        if self.base == 2 {
            debug_assert_eq!(seg.len, 2);
            return vec![StripPart::Merge { park: seg.start, chan: seg.start + 1, per_cell: 2 }];
        }
        match seg.len {
            3 => {
                let per_cell = if self.obstacle_mode { 2 } else { 3 };
                vec![StripPart::Highway { park: seg.start + 1, per_cell }]
            }
            4 => vec![
                StripPart::Merge { park: seg.start, chan: seg.start + 1, per_cell: 2 },
                StripPart::Merge { park: seg.start + 3, chan: seg.start + 2, per_cell: 2 },
            ],
            5 => vec![
                StripPart::Merge { park: seg.start, chan: seg.start + 1, per_cell: 2 },
                StripPart::Highway { park: seg.start + 3, per_cell: 3 },
            ],
            _ => unreachable!("cell columns are 2..=5 wide"),
        }
    }

    /// Round-2 parking slots of one part within one band's cell: the first
    /// `per_cell` free rows of the band on the part's parking column.
    pub fn part_cell_slots(&self, part: &StripPart, band: usize) -> Vec<i32> {
        let seg = self.row_segs[band];
        let park = part.park();
        let blocked = |x: i32| self.obstacle_mode && x % 3 == 2 && park % 3 == 2;
        seg.coords().filter(|&x| !blocked(x)).take(part.per_cell()).collect()
    }

    /// Total parking capacity: robots the pipeline can host.
    pub fn capacity(&self) -> usize {
        (0..self.bands()).map(|b| self.band_slots(b).len()).sum()
    }
}

/// The obstacle pattern supported by the highway pipeline: one obstacle at
/// the center of every 3x3 cell, i.e. coordinates (3a+2, 3b+2).
pub fn sorting_obstacles(rows: i32, cols: i32) -> Vec<Position> {
    let mut out = Vec::new();
    for a in 0..rows / 3 {
        for b in 0..cols / 3 {
            out.push(Position::new(3 * a + 2, 3 * b + 2));
        }
    }
    out
}
