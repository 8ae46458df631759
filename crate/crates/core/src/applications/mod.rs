//! Reductions to single-source shortest paths: difference constraints and
//! minimum mean-weight cycles.

mod diff;
mod mean_cycle;

pub use diff::{reduce_diff_system, solve_diff_system, DiffConstraint, DiffError, DiffGraph, DiffSolution, DiffSystem};
pub use mean_cycle::{min_mean_cycle, MeanCycleResult};
