//! Makespan-near-optimal multi-robot path planning (MRPP) on 4-connected
//! grids: the RTM / RTH / RTH-LBA / RTH-LL / RTLM solver family with their
//! supporting machinery.
//!
//! Module map:
//! - [`grid`]: world model, collision semantics, plan validation, makespan
//!   and lower-bound accounting.
//! - [`io`]: instance and plan text formats.
//! - [`rubik`]: abstract Rubik-Table planning (color multigraph, perfect
//!   matching decomposition, three-round shuffle plans).
//! - [`matching`]: optimized matching selection (linear bottleneck
//!   assignment, integer-program model construction and export).
//! - [`motion`]: collision-free grid realizations of shuffles (swap
//!   gadgets, odd-even sort, highway and linear-merge primitives,
//!   in-cell recentering, script compaction).
//! - [`flow`]: unlabeled routing via time-expanded max flow plus a
//!   brute-force optimal oracle.
//! - [`solver`]: end-to-end pipelines (RTM, RTH, RTLM, lifelong batches).
//! - [`bench`]: instance generators, benchmark runner, CSV output.
//! - [`render`]: SVG export of plans.
//!
//! The `parallel` feature (on by default) backs the benchmark runner and
//! Monte-Carlo helpers with rayon; without it everything runs serially
//! through the same interfaces.

pub mod bench;
mod bipartite;
pub mod flow;
pub mod grid;
pub mod io;
pub mod matching;
pub mod motion;
pub mod par;
pub mod render;
pub mod rubik;
pub mod solver;
