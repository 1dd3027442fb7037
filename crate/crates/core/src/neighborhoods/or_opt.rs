use crate::instance::Instance;
use crate::tour::{Move, MoveDelta, Tour};

/// Best relocation, plain or reversed, of a segment of at most `k_or` visits
/// starting at `anchor`, in `O(k_or * n)`.
///
/// For each segment length the insertion point walks away from the segment
/// in both directions and stops at the first visit whose pair would be
/// split the wrong way. Reversed relocations need a segment that holds no
/// complete pair.
pub fn or_opt_scan(instance: &Instance, tour: &Tour, anchor: usize, k_or: usize) -> Option<MoveDelta> {
    let seq = tour.sequence();
    let last = seq.len() - 2;
    if anchor == 0 || anchor > last {
        return None;
    }
    // costs are symmetric: every arc read below starts at a segment end, so
    // the scan stays within two matrix rows
    let arc = |a: usize, b: usize| instance.arc(a, b);
    let mut best: Option<MoveDelta> = None;
    let mut consider = |delta: f64, len: usize, after: usize, reversed: bool| {
        if best.as_ref().map_or(true, |b| delta < b.delta) {
            best = Some(MoveDelta {
                mv: Move::OrOpt {
                    start: anchor,
                    len,
                    after,
                    reversed,
                },
                delta,
                feasible: true,
            });
        }
    };

    let mut reversible = true;
    let max_end = (anchor + k_or - 1).min(last);
    for end in anchor..=max_end {
        let v = seq[end];
        if instance.is_delivery(v) && tour.position(instance.pickup_of(v)) >= anchor {
            reversible = false;
        }
        let len = end - anchor + 1;
        let (first, tail) = (seq[anchor], seq[end]);
        let (prev, next) = (seq[anchor - 1], seq[end + 1]);
        let removal = arc(prev, next) - arc(prev, first) - arc(tail, next);
        let inside = |p: usize| p >= anchor && p <= end;

        // forward: the segment jumps over positions end+1 ..= after
        for after in (end + 1)..=last {
            let w = seq[after];
            if instance.is_delivery(w) && inside(tour.position(instance.pickup_of(w))) {
                break;
            }
            let (a, b) = (seq[after], seq[after + 1]);
            let base = removal - tour.link(after);
            consider(base + arc(first, a) + arc(tail, b), len, after, false);
            if reversible {
                consider(base + arc(tail, a) + arc(first, b), len, after, true);
            }
        }
        // backward: the segment jumps over positions after+1 ..= anchor-1
        for after in (0..anchor.saturating_sub(1)).rev() {
            let w = seq[after + 1];
            if instance.is_pickup(w) && inside(tour.position(instance.delivery_of(w))) {
                break;
            }
            let (a, b) = (seq[after], seq[after + 1]);
            let base = removal - tour.link(after);
            consider(base + arc(first, a) + arc(tail, b), len, after, false);
            if reversible {
                consider(base + arc(tail, a) + arc(first, b), len, after, true);
            }
        }
    }
    best
}
