use std::collections::HashMap;

use crate::instance::Instance;
use crate::tour::{Move, MoveDelta, Tour};

/// A node of the layered auxiliary graph.
///
/// Layer `l` holds the ways to fill the first `l` slots of the new tour. A
/// state records the current tour position `position` placed last, the
/// smallest current position `first_missing` not placed yet, and a bitmask
/// `ahead` whose bit `t` is set when position `first_missing + 1 + t` is
/// already placed. Every placed position lies below `first_missing + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BsState {
    pub position: usize,
    pub first_missing: usize,
    pub ahead: u32,
    /// Reached by placing a delivery before its pickup; never expanded.
    pub pruned: bool,
    pub cost: f64,
    pred: u32,
}

/// Layered graph of the Balas-Simonetti neighborhood of a tour.
#[derive(Debug, Clone)]
pub struct BsGraph {
    k: usize,
    layers: Vec<Vec<BsState>>,
}

impl BsGraph {
    /// Builds every layer with shortest-path labels, `O(k^2 2^k n)`.
    ///
    /// Position `q` may fill the next slot when `first_missing <= q <
    /// first_missing + k`. A delivery whose pickup is not placed yet yields
    /// a pruned state that is kept for inspection but not expanded.
    pub fn build(instance: &Instance, tour: &Tour, k: usize) -> BsGraph {
        assert!((1..=32).contains(&k), "window size must be within 1..=32");
        let seq = tour.sequence();
        let end = seq.len() - 1;
        let mut layers: Vec<Vec<BsState>> = Vec::with_capacity(end + 1);
        layers.push(vec![BsState {
            position: 0,
            first_missing: 1,
            ahead: 0,
            pruned: false,
            cost: 0.0,
            pred: 0,
        }]);
        for _ in 1..end {
            let prev = layers.last().expect("layer 0 exists");
            let mut next: Vec<BsState> = Vec::new();
            let mut index: HashMap<(usize, usize, u32), usize> = HashMap::new();
            for (s_idx, s) in prev.iter().enumerate() {
                if s.pruned {
                    continue;
                }
                let (m, bits) = (s.first_missing, s.ahead);
                let upper = (m + k - 1).min(end - 1);
                for q in m..=upper {
                    if q > m && bits >> (q - m - 1) & 1 == 1 {
                        continue;
                    }
                    let (m2, bits2) = if q == m {
                        let mut m2 = m + 1;
                        let mut b = bits;
                        while b & 1 == 1 {
                            b >>= 1;
                            m2 += 1;
                        }
                        (m2, b >> 1)
                    } else {
                        (m, bits | 1 << (q - m - 1))
                    };
                    let v = seq[q];
                    let pruned = instance.is_delivery(v) && {
                        let p = tour.position(instance.pickup_of(v));
                        !(p < m || (p > m && bits >> (p - m - 1) & 1 == 1))
                    };
                    let cost = s.cost + instance.arc(seq[s.position], v);
                    match index.get(&(q, m2, bits2)) {
                        Some(&at) => {
                            let t = &mut next[at];
                            if !pruned && cost < t.cost {
                                t.cost = cost;
                                t.pred = s_idx as u32;
                            }
                        }
                        None => {
                            index.insert((q, m2, bits2), next.len());
                            next.push(BsState {
                                position: q,
                                first_missing: m2,
                                ahead: bits2,
                                pruned,
                                cost: if pruned { f64::INFINITY } else { cost },
                                pred: s_idx as u32,
                            });
                        }
                    }
                }
            }
            layers.push(next);
        }
        // terminal layer: only states that placed everything may close
        let prev = layers.last().expect("at least one layer");
        let mut terminal = BsState {
            position: end,
            first_missing: end,
            ahead: 0,
            pruned: false,
            cost: f64::INFINITY,
            pred: 0,
        };
        for (s_idx, s) in prev.iter().enumerate() {
            if s.pruned || s.first_missing != end {
                continue;
            }
            let cost = s.cost + instance.arc(seq[s.position], seq[end]);
            if cost < terminal.cost {
                terminal.cost = cost;
                terminal.pred = s_idx as u32;
            }
        }
        layers.push(vec![terminal]);
        BsGraph { k, layers }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn layers(&self) -> &[Vec<BsState>] {
        &self.layers
    }

    /// Non-pruned states in a layer.
    pub fn layer_width(&self, layer: usize) -> usize {
        self.layers[layer].iter().filter(|s| !s.pruned).count()
    }

    pub fn max_layer_width(&self) -> usize {
        (0..self.layers.len()).map(|l| self.layer_width(l)).max().unwrap_or(0)
    }

    /// Total number of states, pruned ones included.
    pub fn state_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Cost of the best tour in the neighborhood.
    pub fn best_cost(&self) -> f64 {
        self.layers.last().expect("terminal layer")[0].cost
    }

    /// Current positions in the order the best tour visits them.
    pub fn best_positions(&self) -> Vec<usize> {
        let mut out = vec![0; self.layers.len()];
        let mut idx = 0usize;
        for l in (0..self.layers.len()).rev() {
            let s = &self.layers[l][idx];
            out[l] = s.position;
            idx = s.pred as usize;
        }
        out
    }
}

/// Best tour in the neighborhood, never worse than the input.
pub fn bs_best(instance: &Instance, tour: &Tour, k: usize) -> Tour {
    if k <= 1 {
        return tour.clone();
    }
    let graph = BsGraph::build(instance, tour, k);
    let seq: Vec<usize> = graph.best_positions().into_iter().map(|p| tour.at(p)).collect();
    Tour::from_sequence(instance, seq).expect("layered path is a permutation")
}

/// [`bs_best`] expressed as a move.
pub fn bs_move(instance: &Instance, tour: &Tour, k: usize) -> MoveDelta {
    let best = bs_best(instance, tour, k);
    MoveDelta {
        delta: best.cost() - tour.cost(),
        mv: Move::Reorder {
            visits: best.visits().to_vec(),
        },
        feasible: true,
    }
}
