mod common;

use common::{edge_sum, precedence_by_scan, rng, state};
use pdtsp_kit::instance::parse_instance;
use pdtsp_kit::neighborhoods::relocate_pair_best;
use pdtsp_kit::tour::{apply_move, check_precedence, tour_cost, Move, MoveDelta};
use pdtsp_kit::{Error, Tour};
use proptest::prelude::*;

#[test]
fn rejects_malformed_sequences() {
    let (inst, _) = state(2, 0);
    assert!(matches!(Tour::from_visits(&inst, &[1, 2, 3]), Err(Error::InvalidTour(_))));
    assert!(matches!(Tour::from_visits(&inst, &[1, 1, 3, 4]), Err(Error::InvalidTour(_))));
    assert!(matches!(Tour::from_visits(&inst, &[1, 2, 3, 5]), Err(Error::InvalidTour(_))));
}

#[test]
fn identity_relocation_is_a_no_op() {
    let (inst, _) = state(3, 0);
    let tour = Tour::from_visits(&inst, &[1, 2, 4, 3, 5, 6]).unwrap();
    let mv = MoveDelta { mv: Move::RelocatePair { pickup: 2, pickup_after: 1, delivery_after: 3 }, delta: 0.0, feasible: true };
    assert_eq!(apply_move(&inst, &tour, &mv).unwrap(), tour);
}

#[test]
fn infeasible_moves_are_refused() {
    let (inst, tour) = state(3, 1);
    let mv = MoveDelta { mv: Move::TwoOpt { i: 0, j: 3 }, delta: 0.0, feasible: false };
    assert!(matches!(apply_move(&inst, &tour, &mv), Err(Error::InfeasibleMove)));
}

#[test]
fn violated_pairs_in_position_order() {
    let (inst, _) = state(3, 1);
    let tour = Tour::from_visits(&inst, &[6, 5, 1, 2, 3, 4]).unwrap();
    assert_eq!(tour.violated_pairs(&inst), vec![2, 3]);
}

#[test]
fn closed_cost_on_a_line() {
    let inst = parse_instance(
        "NAME l\nPAIRS 1\nMODE closed\nROUNDING nearest\nEDGE_SOURCE coords\nCOORDS\n0 0 0\n1 0 1\n2 0 2\nPAIRING\n1 2\nEOF\n",
    )
    .unwrap();
    assert_eq!(Tour::from_visits(&inst, &[1, 2]).unwrap().cost(), 4.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn position_index_and_cost_stay_in_sync(n in 1usize..20, seed in any::<u64>()) {
        let (inst, tour) = state(n, seed);
        for (k, &v) in tour.sequence().iter().enumerate() {
            prop_assert_eq!(tour.position(v), k);
            prop_assert_eq!(tour.at(k), v);
        }
        prop_assert_eq!(tour.cost(), edge_sum(&inst, tour.sequence()));
        prop_assert_eq!(tour.cost(), tour_cost(&inst, tour.sequence()));
        prop_assert!(tour.is_feasible(&inst));
        let mut visits = tour.visits().to_vec();
        visits.sort();
        prop_assert_eq!(visits, (1..=2 * n).collect::<Vec<_>>());
    }

    #[test]
    fn precedence_check_agrees_with_scan(n in 1usize..8, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let (inst, _) = state(n, seed);
        let mut visits: Vec<usize> = (1..=2 * n).collect();
        visits.shuffle(&mut rng(seed));
        let tour = Tour::from_visits(&inst, &visits).unwrap();
        prop_assert_eq!(check_precedence(&inst, tour.sequence()), precedence_by_scan(&inst, tour.sequence()));
        prop_assert_eq!(tour.is_feasible(&inst), tour.violated_pairs(&inst).is_empty());
    }

    #[test]
    fn relocation_delta_is_exact(n in 1usize..15, seed in any::<u64>()) {
        let (inst, tour) = state(n, seed);
        let x = 1 + (seed as usize % n);
        let m = relocate_pair_best(&inst, &tour, x);
        let t = apply_move(&inst, &tour, &m).unwrap();
        prop_assert_eq!(t.cost() - tour.cost(), m.delta);
        prop_assert!(precedence_by_scan(&inst, t.sequence()));
    }
}
