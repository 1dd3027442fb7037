use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use super::construct::{greedy_construct_with, insert_pairs, InsertionEval};
use super::{reaches, RunOutcome};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighborhoods::removal_delta;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DestroyOperator {
    /// Uniformly chosen pairs.
    Random,
    /// Pairs with large removal gain, biased toward the largest.
    Worst,
    /// All pairs touching the span between a random pickup and its delivery.
    Block,
}

impl FromStr for DestroyOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(DestroyOperator::Random),
            "worst" => Ok(DestroyOperator::Worst),
            "block" => Ok(DestroyOperator::Block),
            other => Err(Error::InvalidParams(format!("unknown destroy operator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RrParams {
    pub operators: Vec<DestroyOperator>,
    pub insertion: InsertionEval,
    pub max_iterations: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Stop once the best cost reaches this value.
    pub target: Option<f64>,
    /// Exponent of the worst-removal bias.
    pub worst_bias: f64,
    /// Relative degradation accepted with probability one half at the start.
    pub start_degradation: f64,
    /// Final temperature as a fraction of the initial one.
    pub final_ratio: f64,
}

impl Default for RrParams {
    fn default() -> Self {
        RrParams {
            operators: vec![DestroyOperator::Random, DestroyOperator::Worst, DestroyOperator::Block],
            insertion: InsertionEval::Fast,
            max_iterations: None,
            time_limit: None,
            target: None,
            worst_bias: 3.0,
            start_degradation: 0.05,
            final_ratio: 1e-3,
        }
    }
}

impl RrParams {
    pub fn validate(&self) -> Result<()> {
        if self.operators.is_empty() {
            return Err(Error::InvalidParams("at least one destroy operator is required".into()));
        }
        if self.max_iterations.is_none() && self.time_limit.is_none() {
            return Err(Error::InvalidParams("an iteration or time budget is required".into()));
        }
        if !(self.final_ratio > 0.0 && self.final_ratio <= 1.0) || self.start_degradation <= 0.0 {
            return Err(Error::InvalidParams("temperature settings out of range".into()));
        }
        Ok(())
    }

    fn progress(&self, iteration: u64, elapsed: Duration) -> f64 {
        let by_iter = self.max_iterations.map_or(0.0, |m| iteration as f64 / m.max(1) as f64);
        let by_time = self
            .time_limit
            .map_or(0.0, |t| elapsed.as_secs_f64() / t.as_secs_f64().max(f64::MIN_POSITIVE));
        by_iter.max(by_time).min(1.0)
    }
}

/// Range of the number of pairs removed per iteration: from
/// `min(30, 0.2n)` to `min(50, 0.55n)`, rounded to nearest and kept within
/// `1..=n`.
pub fn q_bounds(n_pairs: usize) -> (usize, usize) {
    if n_pairs == 0 {
        return (0, 0);
    }
    let n = n_pairs as f64;
    let lo = ((30f64).min(0.20 * n).round() as usize).clamp(1, n_pairs);
    let hi = ((50f64).min(0.55 * n).round() as usize).clamp(lo, n_pairs);
    (lo, hi)
}

/// Removes `q` pairs from `tour`. Returns the remaining extended sequence
/// and the removed pickups in the order they were chosen.
pub fn destroy<R: Rng + ?Sized>(
    instance: &Instance,
    tour: &Tour,
    operator: DestroyOperator,
    q: usize,
    worst_bias: f64,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    let n = instance.n_pairs();
    let q = q.min(n);
    let removed: Vec<usize> = match operator {
        DestroyOperator::Random => {
            let all: Vec<usize> = (1..=n).collect();
            all.choose_multiple(rng, q).copied().collect()
        }
        DestroyOperator::Worst => {
            let mut list: Vec<(f64, usize)> = (1..=n).map(|x| (-removal_delta(instance, tour, x), x)).collect();
            list.sort_by(|a, b| b.0.total_cmp(&a.0));
            let mut out = Vec::with_capacity(q);
            for _ in 0..q {
                let u: f64 = rng.gen();
                let idx = ((list.len() as f64) * u.powf(worst_bias)) as usize;
                out.push(list.remove(idx.min(list.len() - 1)).1);
            }
            out
        }
        DestroyOperator::Block => {
            let mut taken = vec![false; n + 1];
            let mut out = Vec::with_capacity(q);
            while out.len() < q {
                let free: Vec<usize> = (1..=n).filter(|&x| !taken[x]).collect();
                let x = *free.choose(rng).expect("fewer than n removed");
                let (a, b) = (tour.position(x), tour.position(instance.delivery_of(x)));
                for p in a..=b {
                    let v = tour.at(p);
                    let pickup = if instance.is_pickup(v) { v } else { instance.pickup_of(v) };
                    if !taken[pickup] {
                        taken[pickup] = true;
                        out.push(pickup);
                    }
                }
            }
            out.truncate(q);
            out
        }
    };
    let mut gone = vec![false; instance.terminal() + 1];
    for &x in &removed {
        gone[x] = true;
        gone[instance.delivery_of(x)] = true;
    }
    let rest = tour.sequence().iter().copied().filter(|&v| !gone[v]).collect();
    (rest, removed)
}

/// Ruin-and-Recreate with Metropolis acceptance under exponential cooling.
pub fn rr_run<R: Rng + ?Sized>(instance: &Instance, params: &RrParams, rng: &mut R) -> Result<RunOutcome> {
    rr_run_with_observer(instance, params, rng, |_, _| {})
}

/// [`rr_run`] calling `observe(iteration, incumbent)` after every iteration.
pub fn rr_run_with_observer<R: Rng + ?Sized>(
    instance: &Instance,
    params: &RrParams,
    rng: &mut R,
    mut observe: impl FnMut(u64, &Tour),
) -> Result<RunOutcome> {
    params.validate()?;
    let start = Instant::now();
    let mut current = greedy_construct_with(instance, params.insertion, rng);
    let mut best = current.clone();
    let mut time_to_best = start.elapsed();
    let t0 = params.start_degradation * current.cost() / std::f64::consts::LN_2;
    let (q_lo, q_hi) = q_bounds(instance.n_pairs());
    let mut iteration = 0u64;
    loop {
        let elapsed = start.elapsed();
        if params.max_iterations.map_or(false, |m| iteration >= m)
            || params.time_limit.map_or(false, |t| elapsed >= t)
            || reaches(best.cost(), params.target)
            || instance.n_pairs() == 0
        {
            break;
        }
        let temperature = t0 * params.final_ratio.powf(params.progress(iteration, elapsed));
        let op = *params.operators.choose(rng).expect("validated non-empty");
        let q = rng.gen_range(q_lo..=q_hi);
        let (rest, mut removed) = destroy(instance, &current, op, q, params.worst_bias, rng);
        removed.shuffle(rng);
        let seq = insert_pairs(instance, &rest, &removed, params.insertion);
        let candidate = Tour::from_sequence(instance, seq).expect("insertion keeps a permutation");
        let delta = candidate.cost() - current.cost();
        let accept = delta <= 0.0 || (temperature > 0.0 && rng.gen::<f64>() < (-delta / temperature).exp());
        if accept {
            current = candidate;
            if current.cost() < best.cost() {
                best = current.clone();
                time_to_best = start.elapsed();
            }
        }
        iteration += 1;
        observe(iteration, &current);
    }
    Ok(RunOutcome {
        best,
        iterations: iteration,
        time_to_best,
        elapsed: start.elapsed(),
    })
}
