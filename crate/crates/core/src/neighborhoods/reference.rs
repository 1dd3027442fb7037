//! Exhaustive reference explorations for small tours.
//!
//! Every function here rebuilds candidate sequences explicitly, checks
//! precedence by scanning positions and recomputes costs from scratch. They
//! share no evaluation code with the fast scans and exist to audit them.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tour::{Move, MoveDelta, Tour};

/// Largest pair count accepted by [`enumerate_neighborhood_oracle`].
pub const MAX_ORACLE_PAIRS: usize = 6;
/// Largest pair count for the Balas-Simonetti reference (permutation count).
pub const MAX_BS_ORACLE_PAIRS: usize = 5;

/// Neighborhoods with an exhaustive reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    RelocatePair,
    TwoOpt,
    OrOpt { k_or: usize },
    TwoKOpt,
    FourOpt,
    BalasSimonetti { k: usize },
}

fn cost_of(instance: &Instance, seq: &[usize]) -> f64 {
    let mut total = 0.0;
    for w in seq.windows(2) {
        total += instance.arc(w[0], w[1]);
    }
    total
}

fn precedence_ok(instance: &Instance, seq: &[usize]) -> bool {
    let mut pos = vec![0usize; seq.len()];
    for (p, &v) in seq.iter().enumerate() {
        pos[v] = p;
    }
    (1..=instance.n_pairs()).all(|p| pos[p] < pos[instance.delivery_of(p)])
}

/// A candidate neighbor: its extended sequence and cost change.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub delta: f64,
    pub seq: Vec<usize>,
}

fn keep_best(best: &mut Option<Neighbor>, instance: &Instance, base: f64, seq: Vec<usize>) {
    if !precedence_ok(instance, &seq) {
        return;
    }
    let delta = cost_of(instance, &seq) - base;
    if best.as_ref().map_or(true, |b| delta < b.delta) {
        *best = Some(Neighbor { delta, seq });
    }
}

/// Best placement of the pair of `pickup` over every `(i', j')`, the
/// current placement included.
pub fn relocate_pair(instance: &Instance, tour: &Tour, pickup: usize) -> Neighbor {
    let delivery = instance.delivery_of(pickup);
    let rest: Vec<usize> = tour
        .sequence()
        .iter()
        .copied()
        .filter(|&v| v != pickup && v != delivery)
        .collect();
    let mut best = None;
    for i in 1..rest.len() {
        for j in i..rest.len() {
            // pickup lands before rest[i], delivery before rest[j]
            let mut seq = Vec::with_capacity(rest.len() + 2);
            seq.extend_from_slice(&rest[..i]);
            seq.push(pickup);
            seq.extend_from_slice(&rest[i..j]);
            seq.push(delivery);
            seq.extend_from_slice(&rest[j..]);
            keep_best(&mut best, instance, tour.cost(), seq);
        }
    }
    best.expect("at least one placement")
}

/// Best feasible 2-Opt reversing `anchor+1 ..= j-1` for some `j >= anchor+3`.
pub fn two_opt(instance: &Instance, tour: &Tour, anchor: usize) -> Option<Neighbor> {
    let seq = tour.sequence();
    let mut best = None;
    for j in (anchor + 3)..seq.len() {
        let mut s = seq.to_vec();
        s[anchor + 1..j].reverse();
        keep_best(&mut best, instance, tour.cost(), s);
    }
    best
}

/// Best feasible relocation of a segment starting at `anchor`, of length at
/// most `k_or`, plain or reversed, to any other gap.
pub fn or_opt(instance: &Instance, tour: &Tour, anchor: usize, k_or: usize) -> Option<Neighbor> {
    let seq = tour.sequence();
    let mut best = None;
    if anchor == 0 || anchor >= seq.len() - 1 {
        return None;
    }
    for len in 1..=k_or {
        if anchor + len > seq.len() - 1 {
            break;
        }
        let segment = &seq[anchor..anchor + len];
        let mut rest = seq[..anchor].to_vec();
        rest.extend_from_slice(&seq[anchor + len..]);
        for gap in 1..rest.len() {
            if gap == anchor {
                continue;
            }
            for reversed in [false, true] {
                let mut s = rest[..gap].to_vec();
                if reversed {
                    s.extend(segment.iter().rev());
                } else {
                    s.extend_from_slice(segment);
                }
                s.extend_from_slice(&rest[gap..]);
                keep_best(&mut best, instance, tour.cost(), s);
            }
        }
    }
    best
}

/// Every chain of nested exchanges with endpoints inside `[lo, hi]`,
/// outermost first, the empty chain included.
pub fn nested_chains(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for i in lo..=hi {
        for j in (i + 2)..=hi {
            for inner in nested_chains(i + 1, j - 1) {
                let mut chain = vec![(i, j)];
                chain.extend(inner);
                out.push(chain);
            }
        }
    }
    out
}

/// Applies a chain literally: each exchange reverses whatever currently
/// lies strictly between the two visits that originally sat at its
/// endpoints.
pub fn apply_chain(seq: &[usize], chain: &[(usize, usize)]) -> Vec<usize> {
    let mut s = seq.to_vec();
    for &(i, j) in chain {
        let a = s.iter().position(|&v| v == seq[i]).expect("visit present");
        let b = s.iter().position(|&v| v == seq[j]).expect("visit present");
        let (a, b) = (a.min(b), a.max(b));
        s[a + 1..b].reverse();
    }
    s
}

/// Best feasible nested chain and every chain attaining that value.
pub fn two_k_opt(instance: &Instance, tour: &Tour) -> (f64, Vec<Vec<(usize, usize)>>) {
    let seq = tour.sequence();
    let mut best = 0.0;
    let mut argmins: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for chain in nested_chains(0, seq.len() - 1) {
        if chain.is_empty() {
            continue;
        }
        let s = apply_chain(seq, &chain);
        if !precedence_ok(instance, &s) {
            continue;
        }
        let delta = cost_of(instance, &s) - tour.cost();
        if delta < best {
            best = delta;
            argmins = vec![chain];
        } else if delta == best {
            argmins.push(chain);
        }
    }
    (best, argmins)
}

/// Cost change of removing arcs after positions `i` and `j` and
/// reconnecting them. `connecting` joins `s_i` with `s_j`; otherwise `s_i`
/// is joined with `s_{j+1}`.
pub fn exchange_delta(instance: &Instance, seq: &[usize], i: usize, j: usize, connecting: bool) -> f64 {
    let removed = [(seq[i], seq[i + 1]), (seq[j], seq[j + 1])];
    let added = if connecting {
        [(seq[i], seq[j]), (seq[i + 1], seq[j + 1])]
    } else {
        [(seq[i], seq[j + 1]), (seq[i + 1], seq[j])]
    };
    added.iter().map(|&(a, b)| instance.arc(a, b)).sum::<f64>()
        - removed.iter().map(|&(a, b)| instance.arc(a, b)).sum::<f64>()
}

/// Direct minimum over `i1 < i2` of the exchange delta at `(i1, j1)`.
pub fn phi_sub(instance: &Instance, seq: &[usize], connecting: bool, i2: usize, j1: usize) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for i1 in 0..i2 {
        let d = exchange_delta(instance, seq, i1, j1, connecting);
        if best.map_or(true, |b| d < b.0) {
            best = Some((d, i1));
        }
    }
    best
}

/// Direct minimum over `i1 < i2 < j1 < j2` of the exchange delta at
/// `(i1, j1)`, scanning `j1` then `i1` upwards.
pub fn phi(instance: &Instance, seq: &[usize], connecting: bool, i2: usize, j2: usize) -> Option<(f64, usize, usize)> {
    let mut best: Option<(f64, usize, usize)> = None;
    for j1 in (i2 + 1)..j2 {
        for i1 in 0..i2 {
            let d = exchange_delta(instance, seq, i1, j1, connecting);
            if best.map_or(true, |b| d < b.0) {
                best = Some((d, i1, j1));
            }
        }
    }
    best
}

/// Reassembles `p1 .. p5` per the 4-Opt move type, by splicing.
pub fn splice_four_opt(seq: &[usize], kind: crate::tour::FourOptKind, i1: usize, i2: usize, j1: usize, j2: usize) -> Vec<usize> {
    use crate::tour::FourOptKind::*;
    let part = |a: usize, b: usize| seq[a..b].to_vec();
    let rev = |a: usize, b: usize| seq[a..b].iter().rev().copied().collect::<Vec<_>>();
    let (p1, p5) = (part(0, i1 + 1), part(j2 + 1, seq.len()));
    let middle = match kind {
        Type1 => [part(j1 + 1, j2 + 1), part(i2 + 1, j1 + 1), part(i1 + 1, i2 + 1)],
        Type2A => [rev(i2 + 1, j1 + 1), rev(j1 + 1, j2 + 1), part(i1 + 1, i2 + 1)],
        Type2B => [part(j1 + 1, j2 + 1), rev(i1 + 1, i2 + 1), rev(i2 + 1, j1 + 1)],
    };
    let mut out = p1;
    for m in middle {
        out.extend(m);
    }
    out.extend(p5);
    out
}

/// Restricted 4-Opt under the same policy as the fast scan: for every
/// `(i2, j2)` and move type, only the cheapest `(i1, j1)` is checked for
/// precedence. Returns the best improving feasible result.
pub fn four_opt(instance: &Instance, tour: &Tour) -> Option<(Neighbor, Move)> {
    use crate::tour::FourOptKind::*;
    let seq = tour.sequence();
    let end = seq.len() - 1;
    let mut best: Option<(Neighbor, Move)> = None;
    let mut best_delta = 0.0;
    for i2 in 1..end {
        for j2 in (i2 + 2)..end {
            for kind in [Type1, Type2A, Type2B] {
                let mut cheapest: Option<(f64, usize, usize, Vec<usize>)> = None;
                for j1 in (i2 + 1)..j2 {
                    for i1 in 0..i2 {
                        let s = splice_four_opt(seq, kind, i1, i2, j1, j2);
                        let d = cost_of(instance, &s) - tour.cost();
                        if cheapest.as_ref().map_or(true, |c| d < c.0) {
                            cheapest = Some((d, i1, j1, s));
                        }
                    }
                }
                if let Some((d, i1, j1, s)) = cheapest {
                    if d < best_delta && precedence_ok(instance, &s) {
                        best_delta = d;
                        best = Some((Neighbor { delta: d, seq: s }, Move::FourOpt { kind, i1, i2, j1, j2 }));
                    }
                }
            }
        }
    }
    best
}

/// Cheapest tour obtainable by permuting the visits such that every
/// pickup precedes its delivery and no visit is preceded by one that sat
/// `k` or more positions later.
pub fn balas_simonetti(instance: &Instance, tour: &Tour, k: usize) -> Neighbor {
    let seq = tour.sequence();
    let end = seq.len() - 1;
    let mut best: Option<Neighbor> = None;
    let mut order = vec![0usize];
    let mut used = vec![false; end + 1];
    fn rec(
        instance: &Instance,
        seq: &[usize],
        k: usize,
        base: f64,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<Neighbor>,
    ) {
        let end = seq.len() - 1;
        if order.len() == end {
            let mut s: Vec<usize> = order.iter().map(|&p| seq[p]).collect();
            s.push(seq[end]);
            keep_best(best, instance, base, s);
            return;
        }
        for q in 1..end {
            if used[q] {
                continue;
            }
            // an unplaced position at least k below q would be overtaken
            if (1..end).any(|p| !used[p] && p + k <= q) {
                continue;
            }
            used[q] = true;
            order.push(q);
            rec(instance, seq, k, base, order, used, best);
            order.pop();
            used[q] = false;
        }
    }
    rec(instance, seq, k, tour.cost(), &mut order, &mut used, &mut best);
    best.expect("the input tour is always admissible")
}

fn reorder(n: Neighbor) -> MoveDelta {
    MoveDelta {
        mv: Move::Reorder {
            visits: n.seq[1..n.seq.len() - 1].to_vec(),
        },
        delta: n.delta,
        feasible: true,
    }
}

fn pick(best: &mut Option<Neighbor>, cand: Option<Neighbor>) {
    if let Some(c) = cand {
        if best.as_ref().map_or(true, |b| c.delta < b.delta) {
            *best = Some(c);
        }
    }
}

/// Best neighbor of `tour` in the given neighborhood by exhaustive search,
/// returned as a reordering. `None` when the neighborhood is empty (2-Opt,
/// Or-Opt on tiny tours) or holds no improving move (4-Opt).
pub fn enumerate_neighborhood_oracle(instance: &Instance, tour: &Tour, kind: OracleKind) -> Result<Option<MoveDelta>> {
    let n = instance.n_pairs();
    let limit = match kind {
        OracleKind::BalasSimonetti { .. } => MAX_BS_ORACLE_PAIRS,
        _ => MAX_ORACLE_PAIRS,
    };
    if n > limit {
        return Err(Error::SizeGuard { n_pairs: n, limit });
    }
    let end = tour.len() - 1;
    let mut best: Option<Neighbor> = None;
    match kind {
        OracleKind::RelocatePair => {
            for x in 1..=n {
                pick(&mut best, Some(relocate_pair(instance, tour, x)));
            }
        }
        OracleKind::TwoOpt => {
            for a in 0..end {
                pick(&mut best, two_opt(instance, tour, a));
            }
        }
        OracleKind::OrOpt { k_or } => {
            for a in 1..end {
                pick(&mut best, or_opt(instance, tour, a, k_or));
            }
        }
        OracleKind::TwoKOpt => {
            let (delta, chains) = two_k_opt(instance, tour);
            let seq = apply_chain(tour.sequence(), &chains[0]);
            best = Some(Neighbor { delta, seq });
        }
        OracleKind::FourOpt => best = four_opt(instance, tour).map(|(nb, _)| nb),
        OracleKind::BalasSimonetti { k } => best = Some(balas_simonetti(instance, tour, k)),
    }
    Ok(best.map(reorder))
}
