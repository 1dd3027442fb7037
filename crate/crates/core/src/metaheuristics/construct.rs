use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::neighborhoods::{best_insertion, best_insertion_naive, insert_pair};
use crate::tour::Tour;

/// How the best insertion of a pair is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InsertionEval {
    /// Linear time per pair via a suffix minimum.
    #[default]
    Fast,
    /// Enumerates every pickup and delivery slot, quadratic per pair.
    Naive,
}

/// Inserts `pickups` one after another, each at its cheapest position in
/// the sequence built so far. Both evaluations pick the same positions.
pub fn insert_pairs(instance: &Instance, seq: &[usize], pickups: &[usize], eval: InsertionEval) -> Vec<usize> {
    let mut seq = seq.to_vec();
    for &x in pickups {
        let at = match eval {
            InsertionEval::Fast => best_insertion(instance, &seq, x),
            InsertionEval::Naive => best_insertion_naive(instance, &seq, x),
        };
        seq = insert_pair(instance, &seq, x, &at);
    }
    seq
}

/// Randomized greedy construction: shuffle the pairs and insert each at its
/// best position.
pub fn greedy_construct<R: Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Tour {
    greedy_construct_with(instance, InsertionEval::Fast, rng)
}

pub fn greedy_construct_with<R: Rng + ?Sized>(instance: &Instance, eval: InsertionEval, rng: &mut R) -> Tour {
    let mut order: Vec<usize> = (1..=instance.n_pairs()).collect();
    order.shuffle(rng);
    let seq = insert_pairs(instance, &[0, instance.terminal()], &order, eval);
    Tour::from_sequence(instance, seq).expect("insertion keeps a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{random_instance, Rounding, TourMode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let inst = random_instance("one", 1, 10, Rounding::Nearest, TourMode::Closed, &mut rng);
        assert_eq!(greedy_construct(&inst, &mut rng).sequence(), &[0, 1, 2, 3]);
    }

    #[test]
    fn evaluations_agree() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = random_instance("g", 12, 100, Rounding::Nearest, TourMode::Open, &mut rng);
            let a = greedy_construct_with(&inst, InsertionEval::Fast, &mut ChaCha8Rng::seed_from_u64(seed));
            let b = greedy_construct_with(&inst, InsertionEval::Naive, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(a, b);
            assert!(a.is_feasible(&inst));
        }
    }
}
