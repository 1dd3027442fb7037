//! Hybrid genetic search with a no-improvement cutoff.

use pdtsp_kit::instance::random_instance;
use pdtsp_kit::metaheuristics::{hgs_run_with_observer, HgsParams};
use pdtsp_kit::{Rounding, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let inst = random_instance("hgs", 30, 1000, Rounding::Nearest, TourMode::Open, &mut rng);
    let params = HgsParams {
        no_improve: Some(500),
        ..Default::default()
    };
    let out = hgs_run_with_observer(&inst, &params, &mut rng, |g, size| {
        if g % 250 == 0 {
            println!("generation {g:>5}: population {size}");
        }
    })
    .expect("valid parameters");
    println!("best {} after {} generations", out.best.cost(), out.iterations);
    println!("tour {:?}", out.best.visits());
}
