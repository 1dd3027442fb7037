//! Generates a few instances, solves them on worker threads and prints
//! per-instance and per-group summaries.

use std::collections::HashMap;

use pdtsp_kit::cli::{bench, generate, render_summary, summarize, GenOptions, SolveOptions};
use pdtsp_kit::instance::{GenerateOptions, PairGroup};
use pdtsp_kit::oracle::brute_force_optimal;
use pdtsp_kit::{Rounding, TourMode};

fn main() {
    let mut instances = Vec::new();
    for (group, seed) in [(PairGroup::A, 1), (PairGroup::B, 2), (PairGroup::C, 3)] {
        let gen = GenOptions {
            name: format!("bench6-s{seed}{group:?}"),
            options: GenerateOptions {
                group,
                rounding: Rounding::Nearest,
                mode: TourMode::Closed,
            },
            seed,
            coords: None,
            pairs: 6,
            side: 1000,
        };
        instances.push(generate(&gen).expect("even point count"));
    }
    let refs: HashMap<String, f64> = instances
        .iter()
        .map(|i| (i.name().to_string(), brute_force_optimal(i).expect("small").cost))
        .collect();
    let options = SolveOptions {
        seeds: (1..=5).collect(),
        no_improve: Some(50),
        ..SolveOptions::default()
    };
    let records = bench(&instances, &options, &refs, 4).expect("valid options");
    print!("{}", render_summary(&summarize(&records)));
}
