//! Greedy construction followed by a single descent, with and without the
//! large neighborhoods.

use pdtsp_kit::instance::random_instance;
use pdtsp_kit::metaheuristics::greedy_construct;
use pdtsp_kit::search::{local_search, SearchParams};
use pdtsp_kit::{Rounding, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let inst = random_instance("ls", 50, 1000, Rounding::Nearest, TourMode::Closed, &mut rng);
    let start = greedy_construct(&inst, &mut rng);
    let params = SearchParams::default();
    let quick = local_search(&inst, &start, &params, false, &mut rng);
    let deep = local_search(&inst, &quick, &params, true, &mut rng);
    println!("greedy       {}", start.cost());
    println!("phase one    {}", quick.cost());
    println!("with large   {}", deep.cost());
}
