//! Neighborhood explorations.
//!
//! The first group (Relocate-Pair, 2-Opt, Or-Opt) decomposes per pair or
//! anchor position and runs in linear time per call. The second group
//! (2k-Opt, restricted 4-Opt, Balas-Simonetti) explores the whole tour with
//! dynamic programming. All scans expect a precedence-feasible tour unless
//! stated otherwise.

mod balas_simonetti;
mod four_opt;
mod or_opt;
pub mod reference;
mod relocate;
mod two_k_opt;
mod two_opt;

pub use balas_simonetti::{bs_best, bs_move, BsGraph, BsState};
pub use four_opt::{best_type1_unchecked, four_opt_best, PhiEntry, PhiTables, RevLastTables};
pub use or_opt::or_opt_scan;
pub use relocate::{
    best_insertion, best_insertion_naive, insert_pair, relocate_pair_best, relocate_pair_naive,
    removal_delta, Insertion,
};
pub use two_k_opt::{two_k_opt_best, FrTables};
pub use two_opt::{two_opt_delta, two_opt_scan};
