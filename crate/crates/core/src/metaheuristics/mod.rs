//! Ruin-and-Recreate and Hybrid Genetic Search built on the local search.

mod construct;
mod hgs;
mod rr;

use std::time::Duration;

use crate::tour::Tour;

pub use construct::{greedy_construct, greedy_construct_with, insert_pairs, InsertionEval};
pub use hgs::{
    biased_fitness, hgs_run, hgs_run_with_observer, jaccard_distance, lox_crossover, lox_with_window,
    mutate_and_repair, HgsParams, Individual,
};
pub use rr::{destroy, q_bounds, rr_run, rr_run_with_observer, DestroyOperator, RrParams};

/// Result of a metaheuristic run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub best: Tour,
    /// Iterations (RR) or generations (HGS) performed.
    pub iterations: u64,
    pub time_to_best: Duration,
    pub elapsed: Duration,
}

/// Whether `cost` reaches `target` up to a relative tolerance of `1e-9`.
pub(crate) fn reaches(cost: f64, target: Option<f64>) -> bool {
    target.map_or(false, |t| cost <= t + 1e-9 * t.abs().max(1.0))
}
