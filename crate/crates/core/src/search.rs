//! Two-phase local search.
//!
//! Phase one visits the pairs in random order and applies, per pair, the
//! best improving Relocate-Pair, 2-Opt or Or-Opt move anchored at the pair's
//! visits. When a full sweep finds nothing, phase two (if enabled) applies
//! the best improving 2k-Opt, 4-Opt or Balas-Simonetti move and returns to
//! phase one.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighborhoods::{bs_move, four_opt_best, or_opt_scan, relocate_pair_best, two_k_opt_best, two_opt_scan};
use crate::tour::{apply_move, MoveDelta, Tour};

/// Largest Balas-Simonetti window accepted; layer width grows as `2^k`.
pub const MAX_K_BS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    /// Longest segment moved by Or-Opt.
    pub k_or: usize,
    /// Balas-Simonetti window.
    pub k_bs: usize,
    /// Probability that a descent also uses the large neighborhoods.
    pub p_large: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            k_or: 30,
            k_bs: 3,
            p_large: 0.1,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if self.k_or == 0 {
            return Err(Error::InvalidParams("k_or must be at least 1".into()));
        }
        if !(1..=MAX_K_BS).contains(&self.k_bs) {
            return Err(Error::InvalidParams(format!("k_bs must be within 1..={MAX_K_BS}")));
        }
        if !(0.0..=1.0).contains(&self.p_large) {
            return Err(Error::InvalidParams("p_large must be a probability".into()));
        }
        Ok(())
    }
}

fn better(best: &mut Option<MoveDelta>, cand: Option<MoveDelta>) {
    if let Some(c) = cand {
        if best.as_ref().map_or(true, |b| c.delta < b.delta) {
            *best = Some(c);
        }
    }
}

fn apply_if_improving(instance: &Instance, tour: &mut Tour, best: Option<MoveDelta>) -> bool {
    match best {
        Some(mv) if mv.is_improving() => {
            *tour = apply_move(instance, tour, &mv).expect("scans only return feasible moves");
            true
        }
        _ => false,
    }
}

/// Best phase-one move for the pair of `pickup`.
pub fn best_pair_move(instance: &Instance, tour: &Tour, pickup: usize, params: &SearchParams) -> MoveDelta {
    let mut best = Some(relocate_pair_best(instance, tour, pickup));
    let anchors = [tour.position(pickup), tour.position(instance.delivery_of(pickup))];
    for a in anchors {
        better(&mut best, two_opt_scan(instance, tour, a));
    }
    for a in anchors {
        better(&mut best, or_opt_scan(instance, tour, a, params.k_or));
    }
    best.expect("relocate always yields a candidate")
}

/// One pass over all pairs in a fresh random order. The 2-Opt anchored at
/// the depot, which no pair covers, is tried first. Returns whether any
/// move was applied.
pub fn phase_one_sweep<R: Rng + ?Sized>(
    instance: &Instance,
    tour: &mut Tour,
    params: &SearchParams,
    rng: &mut R,
) -> bool {
    let mut improved = apply_if_improving(instance, tour, two_opt_scan(instance, tour, 0));
    let mut order: Vec<usize> = (1..=instance.n_pairs()).collect();
    order.shuffle(rng);
    for x in order {
        let mv = best_pair_move(instance, tour, x, params);
        improved |= apply_if_improving(instance, tour, Some(mv));
    }
    improved
}

/// Best improving move among the large neighborhoods, if any.
pub fn best_large_move(instance: &Instance, tour: &Tour, params: &SearchParams) -> Option<MoveDelta> {
    let mut best = Some(two_k_opt_best(instance, tour));
    better(&mut best, four_opt_best(instance, tour));
    if params.k_bs > 1 {
        better(&mut best, Some(bs_move(instance, tour, params.k_bs)));
    }
    best.filter(MoveDelta::is_improving)
}

/// Descends from a feasible tour to a local optimum of the enabled
/// neighborhoods. The cost strictly decreases with every applied move.
pub fn local_search<R: Rng + ?Sized>(
    instance: &Instance,
    tour: &Tour,
    params: &SearchParams,
    use_large: bool,
    rng: &mut R,
) -> Tour {
    let mut current = tour.clone();
    loop {
        while phase_one_sweep(instance, &mut current, params, rng) {}
        if !use_large {
            return current;
        }
        let large = best_large_move(instance, &current, params);
        if !apply_if_improving(instance, &mut current, large) {
            return current;
        }
    }
}
