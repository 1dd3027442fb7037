//! Exact solver by enumeration, for small instances.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tour::Tour;

/// Largest pair count [`brute_force_optimal`] accepts.
pub const MAX_ORACLE_PAIRS: usize = 8;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub cost: f64,
    pub tour: Tour,
    /// Complete feasible sequences reached by the enumeration.
    pub leaves: u64,
}

struct Search<'a> {
    instance: &'a Instance,
    bound_pruning: bool,
    /// Cheapest arc entering each visit, terminal included.
    min_in: Vec<f64>,
    seq: Vec<usize>,
    placed: Vec<bool>,
    best_cost: f64,
    best_seq: Vec<usize>,
    leaves: u64,
}

impl Search<'_> {
    fn run(&mut self, cost: f64, remaining_in: f64) {
        let inst = self.instance;
        let last = *self.seq.last().expect("depot placed");
        let end = inst.terminal();
        if self.seq.len() == end {
            let total = cost + inst.arc(last, end);
            self.leaves += 1;
            if total < self.best_cost {
                self.best_cost = total;
                self.best_seq = self.seq.clone();
                self.best_seq.push(end);
            }
            return;
        }
        for v in 1..end {
            if self.placed[v] || (inst.is_delivery(v) && !self.placed[inst.pickup_of(v)]) {
                continue;
            }
            let c = cost + inst.arc(last, v);
            let rest = remaining_in - self.min_in[v];
            if self.bound_pruning && c + rest >= self.best_cost {
                continue;
            }
            self.placed[v] = true;
            self.seq.push(v);
            self.run(c, rest);
            self.seq.pop();
            self.placed[v] = false;
        }
    }
}

/// Enumerates precedence-feasible sequences; with `bound_pruning` partial
/// sequences that cannot beat the incumbent are cut, using the cheapest
/// entering arc of every unplaced visit as a lower bound. Without it every
/// one of the `(2n)!/2^n` feasible sequences is reached.
pub fn brute_force(instance: &Instance, bound_pruning: bool) -> Result<OracleResult> {
    let n = instance.n_pairs();
    if n > MAX_ORACLE_PAIRS {
        return Err(Error::SizeGuard {
            n_pairs: n,
            limit: MAX_ORACLE_PAIRS,
        });
    }
    let end = instance.terminal();
    let min_in: Vec<f64> = (0..=end)
        .map(|v| {
            if v == 0 {
                return 0.0;
            }
            (0..end)
                .filter(|&u| u != v)
                .map(|u| instance.arc(u, v))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let remaining_in: f64 = min_in[1..].iter().sum();
    let mut s = Search {
        instance,
        bound_pruning,
        min_in,
        seq: vec![0],
        placed: vec![false; end + 1],
        best_cost: f64::INFINITY,
        best_seq: Vec::new(),
        leaves: 0,
    };
    // the terminal's entering arc stays in the bound until the leaf
    s.run(0.0, remaining_in);
    let tour = Tour::from_sequence(instance, s.best_seq)?;
    Ok(OracleResult {
        cost: tour.cost(),
        tour,
        leaves: s.leaves,
    })
}

/// Exact optimum with bound pruning; `n <= 8`.
pub fn brute_force_optimal(instance: &Instance) -> Result<OracleResult> {
    brute_force(instance, true)
}
