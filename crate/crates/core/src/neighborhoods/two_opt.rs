use crate::instance::Instance;
use crate::tour::{Move, MoveDelta, Tour};

/// Cost change of reversing positions `i+1 ..= j-1`.
#[inline]
pub fn two_opt_delta(instance: &Instance, seq: &[usize], i: usize, j: usize) -> f64 {
    instance.arc(seq[i], seq[j - 1]) + instance.arc(seq[i + 1], seq[j])
        - instance.arc(seq[i], seq[i + 1])
        - instance.arc(seq[j - 1], seq[j])
}

/// Best precedence-feasible 2-Opt with its first endpoint at `anchor`.
///
/// Scans `j = anchor+3, anchor+4, ...` and stops after the first `j` holding
/// a delivery whose pickup lies inside the reversed span, since every later
/// `j` would reverse that pair. Returns `None` when no candidate exists.
pub fn two_opt_scan(instance: &Instance, tour: &Tour, anchor: usize) -> Option<MoveDelta> {
    let seq = tour.sequence();
    let end = seq.len() - 1;
    let mut best: Option<MoveDelta> = None;
    let mut j = anchor + 2;
    while j <= end {
        if j >= anchor + 3 {
            // same value as `two_opt_delta`, reading cached links
            let delta = instance.arc(seq[anchor], seq[j - 1]) + instance.arc(seq[anchor + 1], seq[j])
                - tour.link(anchor)
                - tour.link(j - 1);
            if best.as_ref().map_or(true, |b| delta < b.delta) {
                best = Some(MoveDelta {
                    mv: Move::TwoOpt { i: anchor, j },
                    delta,
                    feasible: true,
                });
            }
        }
        let v = seq[j];
        if instance.is_delivery(v) && tour.position(instance.pickup_of(v)) > anchor {
            break;
        }
        j += 1;
    }
    best
}
