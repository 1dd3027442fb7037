//! Ruin-and-Recreate for a fixed number of iterations.

use pdtsp_kit::instance::random_instance;
use pdtsp_kit::metaheuristics::{rr_run_with_observer, RrParams};
use pdtsp_kit::{Rounding, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let inst = random_instance("rr", 40, 1000, Rounding::Nearest, TourMode::Closed, &mut rng);
    let params = RrParams {
        max_iterations: Some(20_000),
        ..Default::default()
    };
    let out = rr_run_with_observer(&inst, &params, &mut rng, |it, t| {
        if it % 5000 == 0 {
            println!("iteration {it:>6}: current {}", t.cost());
        }
    })
    .expect("valid parameters");
    println!(
        "best {} after {} iterations ({:.2}s, best at {:.2}s)",
        out.best.cost(),
        out.iterations,
        out.elapsed.as_secs_f64(),
        out.time_to_best.as_secs_f64()
    );
}
