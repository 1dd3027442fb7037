use crate::instance::Instance;
use crate::tour::{check_precedence, FourOptKind, Move, MoveDelta, Tour};

/// A minimum together with the `(i1, j1)` that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiEntry {
    pub value: f64,
    pub i1: usize,
    pub j1: usize,
}

impl PhiEntry {
    const EMPTY: PhiEntry = PhiEntry {
        value: f64::INFINITY,
        i1: usize::MAX,
        j1: usize::MAX,
    };

    #[inline]
    fn take_if_better(&mut self, other: PhiEntry) {
        if other.value < self.value {
            *self = other;
        }
    }
}

/// Disconnecting exchange on `(i, j)`: `s_i -> s_{j+1}` and `s_j -> s_{i+1}`.
#[inline]
fn disconnecting(instance: &Instance, seq: &[usize], i: usize, j: usize) -> f64 {
    instance.arc(seq[i], seq[j + 1]) + instance.arc(seq[j], seq[i + 1])
        - instance.arc(seq[i], seq[i + 1])
        - instance.arc(seq[j], seq[j + 1])
}

/// Connecting exchange on `(i, j)`: `s_i -> s_j` and `s_{i+1} -> s_{j+1}`.
#[inline]
fn connecting(instance: &Instance, seq: &[usize], i: usize, j: usize) -> f64 {
    instance.arc(seq[i], seq[j]) + instance.arc(seq[i + 1], seq[j + 1])
        - instance.arc(seq[i], seq[i + 1])
        - instance.arc(seq[j], seq[j + 1])
}

/// Rolling sweep over `(i2, j2)`.
///
/// Keeps, for the current `i2`, the column minima over `i1 < i2` of both
/// exchange kinds (`on_row` sees them, indexed by `j1`), then extends a
/// running minimum over `j1` as `j2` grows (`on_cell` sees the connecting
/// and disconnecting minima). Ties keep the smallest `j1`, then the
/// smallest `i1`. `O(n^2)` time, `O(n)` extra space.
fn sweep(
    instance: &Instance,
    seq: &[usize],
    mut on_row: impl FnMut(usize, &[PhiEntry], &[PhiEntry]),
    mut on_cell: impl FnMut(usize, usize, PhiEntry, PhiEntry),
) {
    let end = seq.len() - 1;
    if end < 4 {
        return;
    }
    let mut sub_c = vec![PhiEntry::EMPTY; end + 1];
    let mut sub_d = vec![PhiEntry::EMPTY; end + 1];
    for i2 in 1..=(end - 3) {
        let i1 = i2 - 1;
        for j1 in (i2 + 1)..=(end - 2) {
            sub_c[j1].take_if_better(PhiEntry {
                value: connecting(instance, seq, i1, j1),
                i1,
                j1,
            });
            sub_d[j1].take_if_better(PhiEntry {
                value: disconnecting(instance, seq, i1, j1),
                i1,
                j1,
            });
        }
        on_row(i2, &sub_c, &sub_d);
        let mut phi_c = PhiEntry::EMPTY;
        let mut phi_d = PhiEntry::EMPTY;
        for j2 in (i2 + 2)..=(end - 1) {
            phi_c.take_if_better(sub_c[j2 - 1]);
            phi_d.take_if_better(sub_d[j2 - 1]);
            on_cell(i2, j2, phi_c, phi_d);
        }
    }
}

/// Materialized minima tables, mainly for inspection and testing.
#[derive(Debug, Clone)]
pub struct PhiTables {
    side: usize,
    sub_c: Vec<PhiEntry>,
    sub_d: Vec<PhiEntry>,
    phi_c: Vec<PhiEntry>,
    phi_d: Vec<PhiEntry>,
}

impl PhiTables {
    pub fn build(instance: &Instance, tour: &Tour) -> PhiTables {
        let side = tour.len();
        let mut t = PhiTables {
            side,
            sub_c: vec![PhiEntry::EMPTY; side * side],
            sub_d: vec![PhiEntry::EMPTY; side * side],
            phi_c: vec![PhiEntry::EMPTY; side * side],
            phi_d: vec![PhiEntry::EMPTY; side * side],
        };
        let mut sub_c = std::mem::take(&mut t.sub_c);
        let mut sub_d = std::mem::take(&mut t.sub_d);
        let mut phi_c = std::mem::take(&mut t.phi_c);
        let mut phi_d = std::mem::take(&mut t.phi_d);
        sweep(
            instance,
            tour.sequence(),
            |i2, c, d| {
                for j1 in (i2 + 1)..side.saturating_sub(2) {
                    sub_c[i2 * side + j1] = c[j1];
                    sub_d[i2 * side + j1] = d[j1];
                }
            },
            |i2, j2, c, d| {
                phi_c[i2 * side + j2] = c;
                phi_d[i2 * side + j2] = d;
            },
        );
        t.sub_c = sub_c;
        t.sub_d = sub_d;
        t.phi_c = phi_c;
        t.phi_d = phi_d;
        t
    }

    fn lookup(table: &[PhiEntry], side: usize, a: usize, b: usize) -> Option<PhiEntry> {
        table.get(a * side + b).copied().filter(|e| e.value.is_finite())
    }

    /// Minimum connecting delta over `i1 < i2` for fixed `j1`.
    pub fn sub_connecting(&self, i2: usize, j1: usize) -> Option<PhiEntry> {
        Self::lookup(&self.sub_c, self.side, i2, j1)
    }

    /// Minimum disconnecting delta over `i1 < i2` for fixed `j1`.
    pub fn sub_disconnecting(&self, i2: usize, j1: usize) -> Option<PhiEntry> {
        Self::lookup(&self.sub_d, self.side, i2, j1)
    }

    /// Minimum connecting delta over `i1 < i2 < j1 < j2`.
    pub fn connecting(&self, i2: usize, j2: usize) -> Option<PhiEntry> {
        Self::lookup(&self.phi_c, self.side, i2, j2)
    }

    /// Minimum disconnecting delta over `i1 < i2 < j1 < j2`.
    pub fn disconnecting(&self, i2: usize, j2: usize) -> Option<PhiEntry> {
        Self::lookup(&self.phi_d, self.side, i2, j2)
    }
}

/// Per-interval precedence summaries.
///
/// `rev(i, j)` tells whether positions `i..=j` hold no complete pair, so the
/// interval can be reversed. `last(i, j)` is the largest position before `i`
/// of a pickup whose delivery lies in `i..=j`, or `None`.
#[derive(Debug, Clone)]
pub struct RevLastTables {
    side: usize,
    rev: Vec<bool>,
    last: Vec<i32>,
}

impl RevLastTables {
    /// `O(n^2)` incremental fill; expects a feasible tour.
    pub fn build(instance: &Instance, tour: &Tour) -> RevLastTables {
        let side = tour.len();
        let mut rev = vec![true; side * side];
        let mut last = vec![-1i32; side * side];
        for i in 1..side.saturating_sub(1) {
            let mut r = true;
            let mut l = -1i32;
            for j in i..side - 1 {
                let v = tour.at(j);
                if instance.is_delivery(v) {
                    let p = tour.position(instance.pickup_of(v));
                    if p >= i {
                        r = false;
                    } else {
                        l = l.max(p as i32);
                    }
                }
                rev[i * side + j] = r;
                last[i * side + j] = l;
            }
        }
        RevLastTables { side, rev, last }
    }

    pub fn rev(&self, i: usize, j: usize) -> bool {
        self.rev[i * self.side + j]
    }

    pub fn last(&self, i: usize, j: usize) -> Option<usize> {
        let l = self.last[i * self.side + j];
        (l >= 0).then_some(l as usize)
    }

    #[inline]
    fn last_at_most(&self, i: usize, j: usize, bound: usize) -> bool {
        self.last[i * self.side + j] <= bound as i32
    }

    /// Whether the reassembly keeps every pickup before its delivery.
    pub fn feasible(&self, kind: FourOptKind, i1: usize, i2: usize, j1: usize, j2: usize) -> bool {
        match kind {
            // p1 p4 p3 p2 p5: nothing in p3 or p4 may depend on p2, nothing
            // in p4 on p3
            FourOptKind::Type1 => self.last_at_most(i2 + 1, j2, i1) && self.last_at_most(j1 + 1, j2, i2),
            // p1 r(p3) r(p4) p2 p5
            FourOptKind::Type2A => {
                self.rev(i2 + 1, j1) && self.rev(j1 + 1, j2) && self.last_at_most(i2 + 1, j2, i1)
            }
            // p1 p4 r(p2) r(p3) p5
            FourOptKind::Type2B => {
                self.rev(i1 + 1, i2) && self.rev(i2 + 1, j1) && self.last_at_most(j1 + 1, j2, i1)
            }
        }
    }
}

fn four_opt_move(kind: FourOptKind, e: PhiEntry, i2: usize, j2: usize, delta: f64, feasible: bool) -> MoveDelta {
    MoveDelta {
        mv: Move::FourOpt {
            kind,
            i1: e.i1,
            i2,
            j1: e.j1,
            j2,
        },
        delta,
        feasible,
    }
}

/// Best improving feasible restricted 4-Opt move, in `O(n^2)`.
///
/// For every `(i2, j2)` each of the three reassemblies is paired with its
/// cheapest `(i1, j1)`; that candidate is kept if it is feasible and beats
/// the best so far. Returns `None` when nothing improves.
pub fn four_opt_best(instance: &Instance, tour: &Tour) -> Option<MoveDelta> {
    let seq = tour.sequence();
    let tables = RevLastTables::build(instance, tour);
    let mut best: Option<MoveDelta> = None;
    let mut best_delta = 0.0;
    sweep(
        instance,
        seq,
        |_, _, _| {},
        |i2, j2, phi_c, phi_d| {
            let d = disconnecting(instance, seq, i2, j2);
            let c = connecting(instance, seq, i2, j2);
            let candidates = [
                (FourOptKind::Type1, d + phi_d.value, phi_d),
                (FourOptKind::Type2A, d + phi_c.value, phi_c),
                (FourOptKind::Type2B, c + phi_d.value, phi_d),
            ];
            for (kind, delta, e) in candidates {
                if delta < best_delta && tables.feasible(kind, e.i1, i2, e.j1, j2) {
                    best_delta = delta;
                    best = Some(four_opt_move(kind, e, i2, j2, delta, true));
                }
            }
        },
    );
    best
}

/// Cheapest Type-1 move regardless of precedence or sign; the `feasible`
/// flag reports whether the result respects precedence.
pub fn best_type1_unchecked(instance: &Instance, tour: &Tour) -> Option<MoveDelta> {
    let seq = tour.sequence();
    let mut best: Option<(f64, PhiEntry, usize, usize)> = None;
    sweep(
        instance,
        seq,
        |_, _, _| {},
        |i2, j2, _, phi_d| {
            let delta = disconnecting(instance, seq, i2, j2) + phi_d.value;
            if best.map_or(true, |b| delta < b.0) {
                best = Some((delta, phi_d, i2, j2));
            }
        },
    );
    best.map(|(delta, e, i2, j2)| {
        let mut mv = four_opt_move(FourOptKind::Type1, e, i2, j2, delta, true);
        mv.feasible = check_precedence(instance, &mv.mv.apply_to(seq));
        mv
    })
}
