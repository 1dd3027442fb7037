//! Reads a canonical instance file (or generates one) and solves it with
//! every method, printing run records.

use pdtsp_kit::cli::{render_records, solve, Method, SolveOptions};
use pdtsp_kit::instance::{parse_instance, random_instance};
use pdtsp_kit::{Rounding, TourMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let inst = match std::env::args().nth(1) {
        Some(path) => parse_instance(&std::fs::read_to_string(path).expect("readable file")).expect("valid instance"),
        None => random_instance(
            "demo",
            7,
            1000,
            Rounding::Nearest,
            TourMode::Closed,
            &mut ChaCha8Rng::seed_from_u64(2),
        ),
    };
    for method in [Method::Hgs, Method::RrFast, Method::LsOnly, Method::Oracle] {
        let options = SolveOptions {
            method,
            seeds: vec![1, 2],
            // RR counts iterations; HGS stops after 100 idle generations
            no_improve: (method != Method::RrFast).then_some(100),
            iterations: (method == Method::RrFast).then_some(2000),
            ..SolveOptions::default()
        };
        match solve(&inst, &options, None, None) {
            Ok(records) => print!("{}", render_records(&records)),
            Err(e) => println!("{method:?}: {e}"),
        }
    }
}
