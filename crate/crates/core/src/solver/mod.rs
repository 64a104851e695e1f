//! End-to-end solver pipelines: RTM at full density, RTH (plain / LBA /
//! LL) at one-third density with optional obstacle pattern, RTLM at half
//! density, and the lifelong batch runner.

mod geometry;
mod lifelong;
mod pipeline;
mod rtm;

pub use geometry::{sorting_obstacles, CellGrid, StripPart};
pub use lifelong::{lifelong_batch_run, LifelongStats};

use crate::flow::FlowError;
use crate::grid::{
    makespan, manhattan_lower_bound, optimality_ratio, validate_plan, Instance, Plan,
    ViolationReport,
};
use crate::matching::MatchingOptError;
use crate::motion::MotionError;
use crate::rubik::{RoundOrder, RubikError};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Rtm,
    Rth,
    Rtlm,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Rtm => "rtm",
            Algorithm::Rth => "rth",
            Algorithm::Rtlm => "rtlm",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MatchingMode {
    #[default]
    Plain,
    Lba,
    /// Build and export the assignment IP, then fall back to plain
    /// matchings for the plan itself.
    IpExportOnly,
}

impl MatchingMode {
    pub fn name(&self) -> &'static str {
        match self {
            MatchingMode::Plain => "plain",
            MatchingMode::Lba => "lba",
            MatchingMode::IpExportOnly => "ip-export",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// `None` picks the cheaper order for the grid shape (row rounds on
    /// the shorter axis).
    pub orientation: Option<RoundOrder>,
    pub matching: MatchingMode,
    pub obstacle_mode: bool,
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            orientation: None,
            matching: MatchingMode::Plain,
            obstacle_mode: false,
            seed: 0,
        }
    }
}

/// Cooperative time budget checked at phase boundaries.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveBudget {
    pub deadline: Option<Instant>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget { deadline: None }
    }

    pub fn with_timeout(secs: f64) -> Self {
        SolveBudget {
            deadline: Some(Instant::now() + std::time::Duration::from_secs_f64(secs)),
        }
    }

    pub fn check(&self) -> Result<(), SolveError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(SolveError::TimedOut),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("solver requires a labeled instance")]
    Unlabeled,
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("density exceeded: {robots} robots over capacity {capacity}")]
    DensityExceeded { robots: usize, capacity: usize },
    #[error("obstacle set does not match the sorting pattern")]
    ObstacleMismatch,
    #[error("{0} does not support obstacles")]
    ObstaclesUnsupported(&'static str),
    #[error("instance invalid: {0}")]
    BadInstance(String),
    #[error("time budget exhausted")]
    TimedOut,
    #[error("anonymous routing failed: {0}")]
    Flow(#[from] FlowError),
    #[error("motion planning failed: {0}")]
    Motion(#[from] MotionError),
    #[error("table planning failed: {0}")]
    Rubik(#[from] RubikError),
    #[error("matching failed: {0}")]
    Matching(#[from] MatchingOptError),
    #[error("internal: emitted plan failed validation: {0}")]
    InvalidPlan(ViolationReport),
}

/// Per-phase makespans, recorded before compaction; recentering steps are
/// folded into the round they prepare.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct PhaseBreakdown {
    pub anon_in: usize,
    pub round1: usize,
    pub round2: usize,
    pub round3: usize,
    pub anon_out: usize,
}

impl PhaseBreakdown {
    pub fn core(&self) -> usize {
        self.round1 + self.round2 + self.round3
    }

    pub fn total(&self) -> usize {
        self.anon_in + self.core() + self.anon_out
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SolveStats {
    pub makespan: usize,
    pub lower_bound: i32,
    pub ratio: Option<f64>,
    pub wall_secs: f64,
    /// Stage-2 bottleneck of the matchings actually used, then of the
    /// plain decomposition for comparison (when both were computed).
    pub matching_bottlenecks: Vec<u64>,
    /// The LBA stage went infeasible and plain matchings were substituted.
    pub lba_fallback: bool,
}

#[derive(Clone, Debug)]
pub struct SolutionBundle {
    pub plan: Plan,
    pub phases: PhaseBreakdown,
    pub stats: SolveStats,
    /// LP text of the assignment model under `MatchingMode::IpExportOnly`.
    pub ip_model_lp: Option<String>,
}

pub(crate) struct BundleParts {
    pub plan: Plan,
    pub phases: PhaseBreakdown,
    pub matching_bottlenecks: Vec<u64>,
    pub lba_fallback: bool,
    pub ip_model_lp: Option<String>,
}

pub(crate) fn finish_bundle(
    instance: &Instance,
    parts: BundleParts,
    started: Instant,
) -> Result<SolutionBundle, SolveError> {
    let mut plan = parts.plan;
    plan.strip_trailing_waits();
    validate_plan(instance, &plan).map_err(SolveError::InvalidPlan)?;
    let lower_bound = manhattan_lower_bound(instance).map_err(|_| SolveError::Unlabeled)?;
    let stats = SolveStats {
        makespan: makespan(&plan),
        lower_bound,
        ratio: optimality_ratio(&plan, instance),
        wall_secs: started.elapsed().as_secs_f64(),
        matching_bottlenecks: parts.matching_bottlenecks,
        lba_fallback: parts.lba_fallback,
    };
    Ok(SolutionBundle {
        plan,
        phases: parts.phases,
        stats,
        ip_model_lp: parts.ip_model_lp,
    })
}

fn transpose_bundle(bundle: SolutionBundle) -> SolutionBundle {
    SolutionBundle { plan: bundle.plan.transposed(), ..bundle }
}

/// Pick the round order that puts the single long round on the long axis:
/// row/column/row when there are at least as many rows as columns.
pub fn auto_orientation(instance: &Instance) -> RoundOrder {
    if instance.grid.rows() >= instance.grid.cols() {
        RoundOrder::Rcr
    } else {
        RoundOrder::Crc
    }
}

pub fn solve(instance: &Instance, config: &SolverConfig) -> Result<SolutionBundle, SolveError> {
    solve_with_budget(instance, config, SolveBudget::unlimited())
}

pub fn solve_with_budget(
    instance: &Instance,
    config: &SolverConfig,
    budget: SolveBudget,
) -> Result<SolutionBundle, SolveError> {
    if !instance.labeled {
        return Err(SolveError::Unlabeled);
    }
    instance
        .validate()
        .map_err(|e| SolveError::BadInstance(e.to_string()))?;
    if config.obstacle_mode && config.algorithm != Algorithm::Rth {
        return Err(SolveError::ObstaclesUnsupported(config.algorithm.name()));
    }
    let started = Instant::now();
    // identity (and trivially near-identity) instances skip the pipeline:
    // its additive constants would dominate them
    if instance.is_identity() {
        return finish_bundle(
            instance,
            BundleParts {
                plan: Plan::empty(&instance.starts),
                phases: PhaseBreakdown::default(),
                matching_bottlenecks: vec![],
                lba_fallback: false,
                ip_model_lp: None,
            },
            started,
        );
    }
    let order = config.orientation.unwrap_or_else(|| auto_orientation(instance));
    match order {
        RoundOrder::Rcr => dispatch(instance, config, budget, started),
        RoundOrder::Crc => {
            let t = instance.transposed();
            dispatch(&t, config, budget, started).map(transpose_bundle)
        }
    }
}

fn dispatch(
    instance: &Instance,
    config: &SolverConfig,
    budget: SolveBudget,
    started: Instant,
) -> Result<SolutionBundle, SolveError> {
    match config.algorithm {
        Algorithm::Rtm => rtm::solve_rtm_rcr(instance, budget, started),
        Algorithm::Rth => pipeline::solve_banded(instance, config, 3, budget, started),
        Algorithm::Rtlm => pipeline::solve_banded(instance, config, 2, budget, started),
    }
}

/// RTM at full robot density (virtual robots fill empty cells).
pub fn solve_rtm(instance: &Instance) -> Result<SolutionBundle, SolveError> {
    solve(instance, &SolverConfig::new(Algorithm::Rtm))
}

/// RTH at up to one-third density (two-ninths with the obstacle pattern).
pub fn solve_rth(instance: &Instance, config: &SolverConfig) -> Result<SolutionBundle, SolveError> {
    assert_eq!(config.algorithm, Algorithm::Rth);
    solve(instance, config)
}

/// RTLM at up to one-half density, no obstacles.
pub fn solve_rtlm(instance: &Instance) -> Result<SolutionBundle, SolveError> {
    solve(instance, &SolverConfig::new(Algorithm::Rtlm))
}
