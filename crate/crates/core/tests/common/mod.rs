#![allow(dead_code)]

use pdtsp_kit::instance::{
    generate_pairs, random_instance, random_points, Coordinates, GenerateOptions, Instance, PairGroup, Rounding, TourMode,
};
use pdtsp_kit::Tour;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integer-cost Euclidean instance.
pub fn instance(n: usize, seed: u64) -> Instance {
    random_instance(format!("r{n}s{seed}"), n, 1000, Rounding::Nearest, TourMode::Closed, &mut rng(seed))
}

pub fn open_instance(n: usize, seed: u64) -> Instance {
    random_instance(format!("o{n}s{seed}"), n, 1000, Rounding::Nearest, TourMode::Open, &mut rng(seed))
}

/// Random instance together with a random feasible tour.
pub fn state(n: usize, seed: u64) -> (Instance, Tour) {
    let mode = if seed % 3 == 0 { TourMode::Open } else { TourMode::Closed };
    let mut r = rng(seed.wrapping_mul(7919).wrapping_add(n as u64));
    let inst = random_instance(format!("st{n}s{seed}"), n, 1000, Rounding::Nearest, mode, &mut r);
    let tour = Tour::random_feasible(&inst, &mut r);
    (inst, tour)
}

/// Plain edge sum, written independently of the library.
pub fn edge_sum(inst: &Instance, seq: &[usize]) -> f64 {
    seq.windows(2).map(|w| inst.arc(w[0], w[1])).sum()
}

/// Pairwise position comparison.
pub fn precedence_by_scan(inst: &Instance, seq: &[usize]) -> bool {
    let n = inst.n_pairs();
    for a in 0..seq.len() {
        for b in 0..a {
            // delivery at b, its pickup later at a
            if seq[b] > n && seq[b] <= 2 * n && seq[a] == seq[b] - n {
                return false;
            }
        }
    }
    true
}

/// Exact optimum by dynamic programming over precedence-closed visit sets
/// (each pair: nothing, pickup only, or both), encoded in base 3.
pub fn subset_dp_optimum(inst: &Instance) -> f64 {
    let n = inst.n_pairs();
    assert!(n <= 11, "subset DP is meant for small instances");
    let end = inst.terminal();
    let states = 3usize.pow(n as u32);
    let pow: Vec<usize> = (0..n).map(|i| 3usize.pow(i as u32)).collect();
    let mut dp = vec![f64::INFINITY; states * end];
    dp[0] = 0.0; // empty set, standing at the depot
    for code in 0..states {
        for last in 0..end {
            let here = dp[code * end + last];
            if !here.is_finite() {
                continue;
            }
            for i in 0..n {
                let digit = code / pow[i] % 3;
                let next = match digit {
                    0 => i + 1,
                    1 => i + 1 + n,
                    _ => continue,
                };
                let to = (code + pow[i]) * end + next;
                let c = here + inst.arc(last, next);
                if c < dp[to] {
                    dp[to] = c;
                }
            }
        }
    }
    let full = states - 1;
    (1..end)
        .map(|last| dp[full * end + last] + inst.arc(last, end))
        .fold(f64::INFINITY, f64::min)
}

/// Points at random angles on a circle, depot included, with every pickup
/// ahead of its delivery in counter-clockwise order. Any closed tour through
/// points in convex position costs at least the perimeter, and the
/// counter-clockwise walk is feasible, so the perimeter is the optimum.
pub fn circle_instance(n: usize, seed: u64) -> (Instance, f64) {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let total = 2 * n + 1;
    let mut r = rng(seed);
    let mut angles: Vec<f64> = (1..total).map(|_| r.gen_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles.insert(0, 0.0);
    let at = |k: usize| (1000.0 * angles[k].cos(), 1000.0 * angles[k].sin());
    let mut order: Vec<usize> = (1..total).collect();
    order.shuffle(&mut r);
    let mut pairs: Vec<(usize, usize)> = order.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
    pairs.sort();
    let mut points = vec![at(0); total];
    for (k, &(p, d)) in pairs.iter().enumerate() {
        points[k + 1] = at(p);
        points[k + 1 + n] = at(d);
    }
    let coords = Coordinates::new(points).unwrap();
    let inst = Instance::from_coordinates(format!("circle{n}"), coords, Rounding::None, TourMode::Closed).unwrap();
    let perimeter = (0..total).map(|k| edge_len(at(k), at((k + 1) % total))).sum();
    (inst, perimeter)
}

/// Group A/B/C instance on uniform points.
pub fn grouped_instance(n: usize, group: PairGroup, seed: u64) -> Instance {
    let coords = random_points(2 * n + 1, 1000, &mut rng(seed));
    let options = GenerateOptions { group, rounding: Rounding::Nearest, mode: TourMode::Closed };
    generate_pairs(format!("g{n}{group:?}"), &coords, options, &mut rng(seed + 1)).unwrap()
}

fn edge_len(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}
