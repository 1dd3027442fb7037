mod common;

use common::rng;
use pdtsp_kit::instance::{
    build_cost_matrix, generate_pairing, generate_pairs, parse_coordinates, parse_instance, random_points,
    Coordinates, CostMatrix, GenerateOptions, Instance, PairGroup, Rounding, TourMode,
};
use pdtsp_kit::Error;
use proptest::prelude::*;

/// Integer square root by bisection on u128.
fn isqrt(v: u128) -> u128 {
    let (mut lo, mut hi) = (0u128, 1u128 << 64);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if mid * mid <= v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Round-half-up of sqrt(d2) in exact integer arithmetic: the unique m with
/// (2m-1)^2 <= 4 d2 < (2m+1)^2.
fn rounded_sqrt(d2: u128) -> u128 {
    let m = isqrt(d2);
    // round up iff sqrt(d2) >= m + 0.5, i.e. 4 d2 >= (2m+1)^2
    if 4 * d2 >= (2 * m + 1) * (2 * m + 1) {
        m + 1
    } else {
        m
    }
}

fn squared(points: &[(f64, f64)], a: usize, b: usize) -> u128 {
    let dx = (points[a].0 - points[b].0) as i64;
    let dy = (points[a].1 - points[b].1) as i64;
    (dx * dx + dy * dy) as u128
}

#[test]
fn rounded_entries_match_exact_integer_recomputation() {
    for seed in 0..20 {
        let coords = random_points(11, 1000, &mut rng(seed));
        let m = build_cost_matrix(&coords, Rounding::Nearest);
        for a in 0..11 {
            for b in 0..11 {
                let expected = rounded_sqrt(squared(coords.points(), a, b));
                assert_eq!(m.get(a, b), expected as f64, "({a},{b})");
            }
        }
    }
}

#[test]
fn unrounded_entries_bracket_the_integer_root() {
    let coords = random_points(10, 1000, &mut rng(3));
    let m = build_cost_matrix(&coords, Rounding::None);
    for a in 0..10 {
        for b in 0..10 {
            let d2 = squared(coords.points(), a, b);
            let e = m.get(a, b);
            assert_eq!(e.floor() as u128, isqrt(d2));
            assert!((e * e - d2 as f64).abs() <= 1e-9 * (d2 as f64).max(1.0));
        }
    }
}

#[test]
fn five_pair_file_distances() {
    let coords = random_points(11, 500, &mut rng(77));
    let mut text = String::from("NAME five\nPAIRS 5\nMODE closed\nROUNDING nearest\nEDGE_SOURCE coords\nCOORDS\n");
    for (i, (x, y)) in coords.points().iter().enumerate() {
        text.push_str(&format!("{i} {x} {y}\n"));
    }
    text.push_str("PAIRING\n1 6\n2 7\n3 8\n4 9\n5 10\nEOF\n");
    let inst = parse_instance(&text).unwrap();
    for a in 0..11 {
        for b in 0..11 {
            assert_eq!(inst.cost(a, b), rounded_sqrt(squared(coords.points(), a, b)) as f64);
        }
    }
}

#[test]
fn small_matrices() {
    let c = Coordinates::new(vec![(0.0, 0.0), (3.0, 4.0)]).unwrap();
    assert_eq!(build_cost_matrix(&c, Rounding::None).get(0, 1), 5.0);
    assert_eq!(build_cost_matrix(&c, Rounding::Nearest).get(1, 0), 5.0);
    let c = Coordinates::new(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
    assert_eq!(build_cost_matrix(&c, Rounding::Nearest).get(0, 1), 1.0);
}

#[test]
fn malformed_inputs_report_lines() {
    let bad_pair = "NAME x\nPAIRS 1\nMODE closed\nROUNDING nearest\nEDGE_SOURCE coords\nCOORDS\n0 0 0\n1 0 1\n2 0 2\nPAIRING\n1 1\nEOF\n";
    assert!(matches!(parse_instance(bad_pair), Err(Error::Parse { line: 11, .. })));
    let asym = "NAME x\nPAIRS 1\nMODE closed\nROUNDING none\nEDGE_SOURCE matrix\nMATRIX\n0 1 2\n1 0 1\n3 1 0\nPAIRING\n1 2\nEOF\n";
    assert!(matches!(parse_instance(asym), Err(Error::Parse { .. })));
    let range = "NAME x\nPAIRS 1\nMODE closed\nROUNDING nearest\nEDGE_SOURCE coords\nCOORDS\n0 0 0\n1 0 1\n2 0 2\nPAIRING\n1 5\nEOF\n";
    assert!(matches!(parse_instance(range), Err(Error::Parse { line: 11, .. })));
    let header = "NAME x\nPAIRS one\n";
    assert!(matches!(parse_instance(header), Err(Error::Parse { line: 2, .. })));
}

#[test]
fn parity_is_checked() {
    let coords = random_points(4, 100, &mut rng(1));
    assert!(matches!(generate_pairing(&coords, PairGroup::C, &mut rng(1)), Err(Error::Generation(_))));
}

#[test]
fn group_c_two_pairs_is_a_matching() {
    let coords = random_points(5, 100, &mut rng(9));
    let pairs = generate_pairing(&coords, PairGroup::C, &mut rng(9)).unwrap();
    let mut seen: Vec<usize> = pairs.iter().flat_map(|&(p, d)| [p, d]).collect();
    seen.sort();
    assert_eq!(seen, vec![1, 2, 3, 4]);
}

#[test]
fn group_a_deliveries_lie_in_the_nearest_five() {
    for seed in 0..10 {
        let coords = random_points(41, 1000, &mut rng(seed));
        let pairs = generate_pairing(&coords, PairGroup::A, &mut rng(seed + 100)).unwrap();
        assert_eq!(pairs.len(), 20);
        let mut assigned = vec![false; 41];
        assigned[0] = true;
        for &(p, d) in &pairs {
            assigned[p] = true;
            // brute-force sort of the still-unassigned vertices
            let mut rest: Vec<usize> = (1..41).filter(|&v| !assigned[v]).collect();
            let dist = |v: usize| squared(coords.points(), p, v);
            rest.sort_by_key(|&v| (dist(v), v));
            assert!(rest[..rest.len().min(5)].contains(&d), "seed {seed}: {d} not near {p}");
            assigned[d] = true;
        }
        // every pickup is the smallest unassigned index at its turn
        let mut pickups: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let sorted = {
            let mut s = pickups.clone();
            s.sort();
            s
        };
        assert_eq!(pickups, sorted);
        pickups.clear();
    }
}

#[test]
fn tsplib_coordinates_put_the_depot_first() {
    let text = "NAME: t\nTYPE: CVRP\nNODE_COORD_SECTION\n1 5 5\n2 0 0\n3 1 1\nDEPOT_SECTION\n2\n-1\nEOF\n";
    let c = parse_coordinates(text).unwrap();
    assert_eq!(c.points(), &[(0.0, 0.0), (5.0, 5.0), (1.0, 1.0)]);
}

#[test]
fn open_mode_drops_the_closing_arc() {
    let c = Coordinates::new(vec![(0.0, 0.0), (0.0, 3.0), (4.0, 3.0)]).unwrap();
    let open = Instance::from_coordinates("o", c.clone(), Rounding::None, TourMode::Open).unwrap();
    let closed = Instance::from_coordinates("c", c, Rounding::None, TourMode::Closed).unwrap();
    assert_eq!(open.arc(2, open.terminal()), 0.0);
    assert_eq!(closed.arc(2, closed.terminal()), 5.0);
}

fn check_invariants(inst: &Instance) {
    let side = inst.n_visits();
    let n = inst.n_pairs();
    assert_eq!(side, 2 * n + 1);
    for a in 0..side {
        assert_eq!(inst.cost(a, a), 0.0);
        for b in 0..side {
            assert!(inst.cost(a, b) >= 0.0);
            assert_eq!(inst.cost(a, b), inst.cost(b, a));
        }
    }
    assert_eq!(inst.partner(0), None);
    for v in 1..side {
        let p = inst.partner(v).unwrap();
        assert_eq!(inst.partner(p), Some(v));
        assert_ne!(p, v);
        assert_eq!(inst.is_pickup(v), v <= n);
    }
}

fn arb_group() -> impl Strategy<Value = PairGroup> {
    prop_oneof![Just(PairGroup::A), Just(PairGroup::B), Just(PairGroup::C)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_instances_are_valid_and_round_trip(
        n in 1usize..25,
        seed in any::<u64>(),
        group in arb_group(),
        open in any::<bool>(),
        nearest in any::<bool>(),
    ) {
        let coords = random_points(2 * n + 1, 1000, &mut rng(seed));
        let options = GenerateOptions {
            group,
            rounding: if nearest { Rounding::Nearest } else { Rounding::None },
            mode: if open { TourMode::Open } else { TourMode::Closed },
        };
        let inst = generate_pairs("g", &coords, options, &mut rng(seed ^ 1)).unwrap();
        check_invariants(&inst);
        let again = parse_instance(&inst.render()).unwrap();
        prop_assert!(again == inst);
    }

    #[test]
    fn matrix_instances_round_trip(n in 1usize..6, seed in any::<u64>()) {
        let coords = random_points(2 * n + 1, 50, &mut rng(seed));
        let rows: Vec<Vec<f64>> = (0..2 * n + 1)
            .map(|a| (0..2 * n + 1).map(|b| coords.distance(a, b).round()).collect())
            .collect();
        let inst = Instance::from_matrix("m", CostMatrix::from_rows(rows).unwrap(), TourMode::Closed).unwrap();
        let again = parse_instance(&inst.render()).unwrap();
        prop_assert!(again == inst);
    }

    #[test]
    fn unrounded_matrix_obeys_triangle_inequality(seed in any::<u64>()) {
        let coords = random_points(9, 1000, &mut rng(seed));
        let m = build_cost_matrix(&coords, Rounding::None);
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    prop_assert!(m.get(a, c) <= m.get(a, b) + m.get(b, c) + 1e-9);
                }
            }
        }
    }
}
