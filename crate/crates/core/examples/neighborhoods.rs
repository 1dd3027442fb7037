//! Evaluates every neighborhood once on a random feasible tour.

use pdtsp_kit::instance::random_instance;
use pdtsp_kit::neighborhoods::{
    bs_move, four_opt_best, or_opt_scan, relocate_pair_best, two_k_opt_best, two_opt_scan,
};
use pdtsp_kit::tour::MoveDelta;
use pdtsp_kit::{Rounding, Tour, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(name: &str, mv: Option<MoveDelta>) {
    match mv {
        Some(m) => println!("{name:>14}: delta {:>8} via {:?}", m.delta, m.mv),
        None => println!("{name:>14}: no candidate"),
    }
}

fn best(moves: impl Iterator<Item = MoveDelta>) -> Option<MoveDelta> {
    moves.min_by(|a, b| a.delta.total_cmp(&b.delta))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let inst = random_instance("demo", 12, 1000, Rounding::Nearest, TourMode::Closed, &mut rng);
    let tour = Tour::random_feasible(&inst, &mut rng);
    println!("random tour cost {}", tour.cost());
    let n = inst.n_pairs();
    show("relocate pair", best((1..=n).map(|x| relocate_pair_best(&inst, &tour, x))));
    show("2-opt", best((0..tour.len()).filter_map(|a| two_opt_scan(&inst, &tour, a))));
    show("or-opt", best((1..tour.len() - 1).filter_map(|a| or_opt_scan(&inst, &tour, a, 30))));
    show("2k-opt", Some(two_k_opt_best(&inst, &tour)));
    show("4-opt", four_opt_best(&inst, &tour));
    let bs = bs_move(&inst, &tour, 4);
    println!("{:>14}: delta {:>8}", "balas-simonetti", bs.delta);
}
