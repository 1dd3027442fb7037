//! Draws a group-A instance from random points and prints it in the
//! canonical format.

use pdtsp_kit::instance::{generate_pairs, random_points, GenerateOptions, PairGroup};
use pdtsp_kit::{Rounding, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let coords = random_points(21, 1000, &mut rng);
    let options = GenerateOptions {
        group: PairGroup::A,
        rounding: Rounding::Nearest,
        mode: TourMode::Closed,
    };
    let inst = generate_pairs("demo10A", &coords, options, &mut rng).expect("21 points give 10 pairs");
    print!("{}", inst.render());
}
