//! Builds the layered graph for a small tour and prints its states.

use pdtsp_kit::instance::random_instance;
use pdtsp_kit::neighborhoods::BsGraph;
use pdtsp_kit::{Rounding, Tour, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inst = random_instance("bs", 3, 100, Rounding::Nearest, TourMode::Closed, &mut rng);
    let tour = Tour::from_visits(&inst, &[1, 2, 5, 4, 3, 6]).expect("permutation");
    let graph = BsGraph::build(&inst, &tour, 3);
    for (l, layer) in graph.layers().iter().enumerate() {
        let states: Vec<String> = layer
            .iter()
            .map(|s| {
                let mark = if s.pruned { "x" } else { "" };
                format!("{}{mark}", tour.at(s.position))
            })
            .collect();
        println!("layer {l}: {}", states.join(" "));
    }
    println!("states {}, widest layer {}", graph.state_count(), graph.max_layer_width());
    println!("tour cost {} -> best in window {}", tour.cost(), graph.best_cost());
}
