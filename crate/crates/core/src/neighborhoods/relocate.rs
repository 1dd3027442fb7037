use crate::instance::Instance;
use crate::tour::{Move, MoveDelta, Tour};

/// Best way to insert a pair into an extended sequence that lacks it.
///
/// The pickup goes between positions `pickup_after` and `pickup_after + 1`.
/// When `delivery_after == pickup_after` the delivery follows the pickup
/// directly; otherwise it goes between `delivery_after` and
/// `delivery_after + 1`, with `delivery_after > pickup_after`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Insertion {
    pub delta: f64,
    pub pickup_after: usize,
    pub delivery_after: usize,
}

impl Insertion {
    pub fn is_consecutive(&self) -> bool {
        self.pickup_after == self.delivery_after
    }
}

// Costs are symmetric, so arcs touching the inserted visit `v` are read
// from row `v`: the scans below stay within one or two matrix rows, and the
// arc being replaced comes from `links[p] = arc(seq[p], seq[p + 1])`.

#[inline]
fn single_cost(instance: &Instance, seq: &[usize], links: &[f64], p: usize, v: usize) -> f64 {
    instance.arc(v, seq[p]) + instance.arc(v, seq[p + 1]) - links[p]
}

#[inline]
fn consecutive_cost(instance: &Instance, seq: &[usize], links: &[f64], p: usize, pickup: usize, delivery: usize) -> f64 {
    instance.arc(pickup, seq[p]) + instance.arc(pickup, delivery) + instance.arc(delivery, seq[p + 1]) - links[p]
}

fn links_of(instance: &Instance, seq: &[usize]) -> Vec<f64> {
    seq.windows(2).map(|w| instance.arc(w[0], w[1])).collect()
}

/// Best insertion of `pickup` and its delivery in `O(len)`.
///
/// Consecutive placements are scanned directly; non-consecutive ones combine
/// the pickup cost at each position with a suffix minimum of delivery costs
/// computed backwards. Among equal costs the candidate with the smallest
/// pickup position wins, then consecutive before non-consecutive, then the
/// smallest delivery position, which is the order of [`best_insertion_naive`].
pub fn best_insertion(instance: &Instance, seq: &[usize], pickup: usize) -> Insertion {
    fast_insertion(instance, seq, &links_of(instance, seq), pickup)
}

fn fast_insertion(instance: &Instance, seq: &[usize], links: &[f64], pickup: usize) -> Insertion {
    let delivery = instance.delivery_of(pickup);
    let last = seq.len() - 2;
    // suffix[j] = best delivery slot among j..=last
    let mut suffix: Vec<(f64, usize)> = vec![(f64::INFINITY, usize::MAX); last + 2];
    for j in (1..=last).rev() {
        let c = single_cost(instance, seq, links, j, delivery);
        suffix[j] = if c <= suffix[j + 1].0 { (c, j) } else { suffix[j + 1] };
    }
    let mut best = Insertion {
        delta: f64::INFINITY,
        pickup_after: 0,
        delivery_after: 0,
    };
    for i in 0..=last {
        let c = consecutive_cost(instance, seq, links, i, pickup, delivery);
        if c < best.delta {
            best = Insertion {
                delta: c,
                pickup_after: i,
                delivery_after: i,
            };
        }
        if i < last {
            let (d, j) = suffix[i + 1];
            let c = single_cost(instance, seq, links, i, pickup) + d;
            if c < best.delta {
                best = Insertion {
                    delta: c,
                    pickup_after: i,
                    delivery_after: j,
                };
            }
        }
    }
    best
}

/// Same result as [`best_insertion`] by direct double enumeration, `O(len^2)`.
pub fn best_insertion_naive(instance: &Instance, seq: &[usize], pickup: usize) -> Insertion {
    naive_insertion(instance, seq, &links_of(instance, seq), pickup)
}

fn naive_insertion(instance: &Instance, seq: &[usize], links: &[f64], pickup: usize) -> Insertion {
    let delivery = instance.delivery_of(pickup);
    let last = seq.len() - 2;
    let mut best = Insertion {
        delta: f64::INFINITY,
        pickup_after: 0,
        delivery_after: 0,
    };
    for i in 0..=last {
        let c = consecutive_cost(instance, seq, links, i, pickup, delivery);
        if c < best.delta {
            best = Insertion {
                delta: c,
                pickup_after: i,
                delivery_after: i,
            };
        }
        for j in (i + 1)..=last {
            let c = single_cost(instance, seq, links, i, pickup) + single_cost(instance, seq, links, j, delivery);
            if c < best.delta {
                best = Insertion {
                    delta: c,
                    pickup_after: i,
                    delivery_after: j,
                };
            }
        }
    }
    best
}

/// Realizes an insertion computed on `seq`.
pub fn insert_pair(instance: &Instance, seq: &[usize], pickup: usize, at: &Insertion) -> Vec<usize> {
    let delivery = instance.delivery_of(pickup);
    let mut out = Vec::with_capacity(seq.len() + 2);
    for (p, &v) in seq.iter().enumerate() {
        out.push(v);
        if p == at.pickup_after {
            out.push(pickup);
            if at.is_consecutive() {
                out.push(delivery);
            }
        } else if p == at.delivery_after {
            out.push(delivery);
        }
    }
    out
}

/// Cost change of removing `pickup` and its delivery from a feasible tour.
pub fn removal_delta(instance: &Instance, tour: &Tour, pickup: usize) -> f64 {
    let i = tour.position(pickup);
    let j = tour.position(instance.delivery_of(pickup));
    let (i, j) = (i.min(j), i.max(j));
    let c = |a: usize, b: usize| instance.arc(tour.at(a), tour.at(b));
    if j == i + 1 {
        c(i - 1, j + 1) - c(i - 1, i) - c(i, j) - c(j, j + 1)
    } else {
        c(i - 1, i + 1) - c(i - 1, i) - c(i, i + 1) + c(j - 1, j + 1) - c(j - 1, j) - c(j, j + 1)
    }
}

/// The tour without the pair of `pickup`, with its links: all but the two
/// arcs bridging a removed visit come from the tour.
fn without_pair(instance: &Instance, tour: &Tour, pickup: usize) -> (Vec<usize>, Vec<f64>) {
    let delivery = instance.delivery_of(pickup);
    let seq = tour.sequence();
    let mut rest = Vec::with_capacity(seq.len() - 2);
    let mut links = Vec::with_capacity(seq.len() - 3);
    let mut prev = 0;
    for (p, &v) in seq.iter().enumerate() {
        if v == pickup || v == delivery {
            continue;
        }
        if p > 0 {
            links.push(if prev + 1 == p { tour.link(prev) } else { instance.arc(seq[prev], v) });
        }
        rest.push(v);
        prev = p;
    }
    (rest, links)
}

fn relocate_with(
    instance: &Instance,
    tour: &Tour,
    pickup: usize,
    evaluate: fn(&Instance, &[usize], &[f64], usize) -> Insertion,
) -> MoveDelta {
    let removal = removal_delta(instance, tour, pickup);
    let (rest, links) = without_pair(instance, tour, pickup);
    let ins = evaluate(instance, &rest, &links, pickup);
    let delivery_after = if ins.is_consecutive() {
        pickup
    } else {
        rest[ins.delivery_after]
    };
    MoveDelta {
        mv: Move::RelocatePair {
            pickup,
            pickup_after: rest[ins.pickup_after],
            delivery_after,
        },
        delta: removal + ins.delta,
        feasible: true,
    }
}

/// Best Relocate-Pair move for the pair of `pickup`, in `O(n)`.
///
/// The current placement is always a candidate, so the delta is at most zero.
pub fn relocate_pair_best(instance: &Instance, tour: &Tour, pickup: usize) -> MoveDelta {
    relocate_with(instance, tour, pickup, fast_insertion)
}

/// Relocate-Pair by enumerating every placement, `O(n^2)` per pair.
pub fn relocate_pair_naive(instance: &Instance, tour: &Tour, pickup: usize) -> MoveDelta {
    relocate_with(instance, tour, pickup, naive_insertion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_instance, Rounding, TourMode};
    use crate::tour::{apply_move, tour_cost};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_pair_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = random_instance("one", 1, 50, Rounding::Nearest, TourMode::Closed, &mut rng);
        let tour = Tour::identity(&inst);
        let mv = relocate_pair_best(&inst, &tour, 1);
        assert_eq!(mv.delta, 0.0);
        assert_eq!(apply_move(&inst, &tour, &mv).unwrap().sequence(), tour.sequence());
    }

    #[test]
    fn adjacent_pair_removal_matches_edge_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let inst = random_instance("adj", 4, 100, Rounding::Nearest, TourMode::Closed, &mut rng);
        // pair 2 adjacent in the middle
        let tour = Tour::from_visits(&inst, &[1, 2, 6, 3, 5, 4, 7, 8]).unwrap();
        let removed: Vec<usize> = tour.sequence().iter().copied().filter(|&v| v != 2 && v != 6).collect();
        let expected = tour_cost(&inst, &removed) - tour.cost();
        assert_eq!(removal_delta(&inst, &tour, 2), expected);
    }

    #[test]
    fn consecutive_insert_layout() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let inst = random_instance("ins", 2, 100, Rounding::Nearest, TourMode::Closed, &mut rng);
        let seq = vec![0, 2, 4, 5];
        let at = Insertion { delta: 0.0, pickup_after: 1, delivery_after: 1 };
        assert_eq!(insert_pair(&inst, &seq, 1, &at), vec![0, 2, 1, 3, 4, 5]);
        let at = Insertion { delta: 0.0, pickup_after: 0, delivery_after: 2 };
        assert_eq!(insert_pair(&inst, &seq, 1, &at), vec![0, 1, 2, 4, 3, 5]);
    }
}
