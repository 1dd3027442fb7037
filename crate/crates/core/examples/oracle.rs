//! Exact optimum of a small instance, with and without bound pruning.

use pdtsp_kit::instance::random_instance;
use pdtsp_kit::oracle::brute_force;
use pdtsp_kit::{Rounding, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let inst = random_instance("small", 5, 1000, Rounding::Nearest, TourMode::Closed, &mut rng);
    for pruning in [false, true] {
        let out = brute_force(&inst, pruning).expect("5 pairs is within the guard");
        println!(
            "pruning {pruning:<5}: cost {} over {} complete sequences, tour {:?}",
            out.cost,
            out.leaves,
            out.tour.visits()
        );
    }
}
