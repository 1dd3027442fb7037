//! Solver toolkit for the single-vehicle pickup-and-delivery traveling
//! salesman problem (PDTSP).
//!
//! The crate is organised bottom-up:
//!
//! - [`instance`]: instance model, the canonical text format, Euclidean cost
//!   matrices and A/B/C pair generation.
//! - [`tour`]: visit sequences, cost and precedence evaluation, and the
//!   [`Move`]/[`MoveDelta`] vocabulary shared by every neighborhood.
//! - [`neighborhoods`]: Relocate-Pair, 2-Opt, Or-Opt, 2k-Opt, restricted 4-Opt
//!   and Balas-Simonetti explorations, plus exhaustive reference versions.
//! - [`search`]: the two-phase local search.
//! - [`metaheuristics`]: greedy construction, ruin-and-recreate and hybrid
//!   genetic search.
//! - [`oracle`]: exact enumeration for small instances.
//! - [`cli`]: run records, benchmarking and instance generation behind the
//!   `pdtsp` binary.
//!
//! Every tour is stored as an extended sequence `[0, v1, ..., v2n, T]` where
//! `T = 2n + 1` is a terminal sentinel. In closed mode `T` is the depot again;
//! in open mode every arc into `T` costs zero. All neighborhood formulas
//! therefore apply unchanged to both modes.

pub mod cli;
pub mod error;
pub mod instance;
pub mod metaheuristics;
pub mod neighborhoods;
pub mod oracle;
pub mod search;
pub mod tour;

pub use error::{Error, Result};
pub use instance::{Coordinates, Instance, Rounding, TourMode};
pub use tour::{Move, MoveDelta, MoveKind, Tour};

/// Moves with `delta > -IMPROVEMENT_EPS` are treated as non-improving.
pub const IMPROVEMENT_EPS: f64 = 1e-9;
