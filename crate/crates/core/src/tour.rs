//! Tours, their evaluation, and the move vocabulary shared by all
//! neighborhoods.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::IMPROVEMENT_EPS;

/// A tour stored as the extended sequence `[0, v1, ..., v2n, T]`.
///
/// The position index, the arc cost leaving every position and the total
/// cost are recomputed on every construction, so they are always exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    seq: Vec<usize>,
    pos: Vec<usize>,
    /// `links[p] = arc(seq[p], seq[p + 1])`
    links: Vec<f64>,
    cost: f64,
}

impl Tour {
    /// Builds a tour from the customer visits in visiting order. The visits
    /// must be a permutation of `1..=2n`; precedence is not required.
    pub fn from_visits(instance: &Instance, visits: &[usize]) -> Result<Tour> {
        let mut seq = Vec::with_capacity(visits.len() + 2);
        seq.push(0);
        seq.extend_from_slice(visits);
        seq.push(instance.terminal());
        Tour::from_sequence(instance, seq)
    }

    /// Builds a tour from a full extended sequence.
    pub fn from_sequence(instance: &Instance, seq: Vec<usize>) -> Result<Tour> {
        let terminal = instance.terminal();
        if seq.len() != terminal + 1 {
            return Err(Error::InvalidTour(format!(
                "expected {} visits, found {}",
                terminal - 1,
                seq.len().saturating_sub(2)
            )));
        }
        if seq[0] != 0 || seq[terminal] != terminal {
            return Err(Error::InvalidTour("sequence must start at the depot and end at the terminal".into()));
        }
        let mut seen = vec![false; terminal + 1];
        for &v in &seq[1..terminal] {
            if v == 0 || v >= terminal {
                return Err(Error::InvalidTour(format!("visit {v} is out of range")));
            }
            if seen[v] {
                return Err(Error::InvalidTour(format!("visit {v} appears twice")));
            }
            seen[v] = true;
        }
        Ok(Tour::from_sequence_unchecked(instance, seq))
    }

    pub(crate) fn from_sequence_unchecked(instance: &Instance, seq: Vec<usize>) -> Tour {
        let mut pos = vec![0; seq.len()];
        for (p, &v) in seq.iter().enumerate() {
            pos[v] = p;
        }
        let links: Vec<f64> = seq.windows(2).map(|w| instance.arc(w[0], w[1])).collect();
        let cost = links.iter().sum();
        Tour { seq, pos, links, cost }
    }

    /// Visits in order `0, 1, ..., n, n+1, ..., 2n`: every pickup first.
    pub fn identity(instance: &Instance) -> Tour {
        Tour::from_sequence_unchecked(instance, (0..=instance.terminal()).collect())
    }

    /// Uniformly random precedence-feasible tour: shuffle all visits, then
    /// swap every pair whose delivery comes first.
    pub fn random_feasible<R: rand::Rng + ?Sized>(instance: &Instance, rng: &mut R) -> Tour {
        use rand::seq::SliceRandom;
        let mut seq: Vec<usize> = (0..=instance.terminal()).collect();
        seq[1..instance.terminal()].shuffle(rng);
        let mut pos = vec![0; seq.len()];
        for (p, &v) in seq.iter().enumerate() {
            pos[v] = p;
        }
        for x in 1..=instance.n_pairs() {
            let d = instance.delivery_of(x);
            if pos[x] > pos[d] {
                seq.swap(pos[x], pos[d]);
                pos.swap(x, d);
            }
        }
        Tour::from_sequence_unchecked(instance, seq)
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    /// Customer visits, depot and terminal excluded.
    pub fn visits(&self) -> &[usize] {
        &self.seq[1..self.seq.len() - 1]
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Position of a visit in the extended sequence.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    #[inline]
    pub fn at(&self, p: usize) -> usize {
        self.seq[p]
    }

    /// Cost of the arc leaving position `p`.
    #[inline]
    pub fn link(&self, p: usize) -> f64 {
        self.links[p]
    }

    /// Length of the extended sequence, `2n + 2`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.len() <= 2
    }

    pub fn is_feasible(&self, instance: &Instance) -> bool {
        (1..=instance.n_pairs()).all(|p| self.pos[p] < self.pos[instance.delivery_of(p)])
    }

    /// Pickups whose delivery is visited first, in order of pickup position.
    pub fn violated_pairs(&self, instance: &Instance) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=instance.n_pairs())
            .filter(|&p| self.pos[p] > self.pos[instance.delivery_of(p)])
            .collect();
        out.sort_by_key(|&p| self.pos[p]);
        out
    }
}

/// Sum of arc costs along an extended sequence.
pub fn tour_cost(instance: &Instance, seq: &[usize]) -> f64 {
    seq.windows(2).map(|w| instance.arc(w[0], w[1])).sum()
}

/// True iff every pickup precedes its delivery in `seq` (extended or bare).
pub fn check_precedence(instance: &Instance, seq: &[usize]) -> bool {
    let mut picked = vec![false; instance.n_pairs() + 1];
    for &v in seq {
        if instance.is_pickup(v) {
            picked[v] = true;
        } else if instance.is_delivery(v) && !picked[instance.pickup_of(v)] {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    RelocatePair,
    TwoOpt,
    OrOpt,
    TwoKOpt,
    FourOptType1,
    FourOptType2A,
    FourOptType2B,
    BalasSimonetti,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FourOptKind {
    /// `p1 p4 p3 p2 p5`: two disconnecting 2-Opts.
    Type1,
    /// `p1 r(p3) r(p4) p2 p5`: connecting on `(i1, j1)`, disconnecting on `(i2, j2)`.
    Type2A,
    /// `p1 p4 r(p2) r(p3) p5`: disconnecting on `(i1, j1)`, connecting on `(i2, j2)`.
    Type2B,
}

/// A move on an extended sequence. Positions refer to the sequence the move
/// was computed on.
#[derive(Debug, Clone, PartialEq)]
pub enum Move {
    /// Take `pickup` and its delivery out, then put the pickup right after
    /// visit `pickup_after` and the delivery right after visit
    /// `delivery_after`. `delivery_after == pickup` places them consecutively.
    RelocatePair {
        pickup: usize,
        pickup_after: usize,
        delivery_after: usize,
    },
    /// Reverse positions `i+1 ..= j-1`.
    TwoOpt { i: usize, j: usize },
    /// Move positions `start .. start+len` between positions `after` and
    /// `after + 1`, reversed or not.
    OrOpt {
        start: usize,
        len: usize,
        after: usize,
        reversed: bool,
    },
    /// Nested 2-Opts `(i, j)`, outermost first.
    TwoKOpt { exchanges: Vec<(usize, usize)> },
    /// Segments `p1 = [0,i1]`, `p2 = [i1+1,i2]`, `p3 = [i2+1,j1]`,
    /// `p4 = [j1+1,j2]`, `p5 = [j2+1,end]` reassembled per `kind`.
    FourOpt {
        kind: FourOptKind,
        i1: usize,
        i2: usize,
        j1: usize,
        j2: usize,
    },
    /// Replace the customer visits wholesale.
    Reorder { visits: Vec<usize> },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::RelocatePair { .. } => MoveKind::RelocatePair,
            Move::TwoOpt { .. } => MoveKind::TwoOpt,
            Move::OrOpt { .. } => MoveKind::OrOpt,
            Move::TwoKOpt { .. } => MoveKind::TwoKOpt,
            Move::FourOpt { kind, .. } => match kind {
                FourOptKind::Type1 => MoveKind::FourOptType1,
                FourOptKind::Type2A => MoveKind::FourOptType2A,
                FourOptKind::Type2B => MoveKind::FourOptType2B,
            },
            Move::Reorder { .. } => MoveKind::BalasSimonetti,
        }
    }

    /// Realizes the move on an extended sequence.
    pub fn apply_to(&self, seq: &[usize]) -> Vec<usize> {
        match self {
            Move::RelocatePair {
                pickup,
                pickup_after,
                delivery_after,
            } => {
                // extended sequences hold 2n + 2 entries
                let delivery = pickup + (seq.len() - 2) / 2;
                let mut out: Vec<usize> = Vec::with_capacity(seq.len());
                for &v in seq.iter().filter(|&&v| v != *pickup && v != delivery) {
                    out.push(v);
                    if v == *pickup_after {
                        out.push(*pickup);
                        if *delivery_after == *pickup {
                            out.push(delivery);
                        }
                    }
                    if v == *delivery_after && *delivery_after != *pickup {
                        out.push(delivery);
                    }
                }
                out
            }
            Move::TwoOpt { i, j } => {
                let mut out = seq.to_vec();
                out[i + 1..*j].reverse();
                out
            }
            Move::OrOpt {
                start,
                len,
                after,
                reversed,
            } => {
                let end = start + len;
                let mut segment = seq[*start..end].to_vec();
                if *reversed {
                    segment.reverse();
                }
                let mut out = Vec::with_capacity(seq.len());
                if *after < *start {
                    out.extend_from_slice(&seq[..=*after]);
                    out.extend_from_slice(&segment);
                    out.extend_from_slice(&seq[after + 1..*start]);
                    out.extend_from_slice(&seq[end..]);
                } else {
                    out.extend_from_slice(&seq[..*start]);
                    out.extend_from_slice(&seq[end..=*after]);
                    out.extend_from_slice(&segment);
                    out.extend_from_slice(&seq[after + 1..]);
                }
                out
            }
            Move::TwoKOpt { exchanges } => {
                // Nested reversals commute into innermost-first order when
                // expressed in the original coordinates.
                let mut out = seq.to_vec();
                for &(i, j) in exchanges.iter().rev() {
                    out[i + 1..j].reverse();
                }
                out
            }
            Move::FourOpt { kind, i1, i2, j1, j2 } => {
                let p1 = &seq[..=*i1];
                let p2 = &seq[i1 + 1..=*i2];
                let p3 = &seq[i2 + 1..=*j1];
                let p4 = &seq[j1 + 1..=*j2];
                let p5 = &seq[j2 + 1..];
                let mut out = Vec::with_capacity(seq.len());
                out.extend_from_slice(p1);
                match kind {
                    FourOptKind::Type1 => {
                        out.extend_from_slice(p4);
                        out.extend_from_slice(p3);
                        out.extend_from_slice(p2);
                    }
                    FourOptKind::Type2A => {
                        out.extend(p3.iter().rev());
                        out.extend(p4.iter().rev());
                        out.extend_from_slice(p2);
                    }
                    FourOptKind::Type2B => {
                        out.extend_from_slice(p4);
                        out.extend(p2.iter().rev());
                        out.extend(p3.iter().rev());
                    }
                }
                out.extend_from_slice(p5);
                out
            }
            Move::Reorder { visits } => {
                let mut out = Vec::with_capacity(seq.len());
                out.push(seq[0]);
                out.extend_from_slice(visits);
                out.push(seq[seq.len() - 1]);
                out
            }
        }
    }
}

/// A candidate move together with its cost change.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveDelta {
    pub mv: Move,
    /// Cost change; negative is improving.
    pub delta: f64,
    /// Precedence-feasible when applied to the tour it was computed on.
    pub feasible: bool,
}

impl MoveDelta {
    pub fn kind(&self) -> MoveKind {
        self.mv.kind()
    }

    pub fn is_improving(&self) -> bool {
        self.feasible && self.delta < -IMPROVEMENT_EPS
    }
}

/// Applies a feasible move and returns the resulting tour.
pub fn apply_move(instance: &Instance, tour: &Tour, mv: &MoveDelta) -> Result<Tour> {
    if !mv.feasible {
        return Err(Error::InfeasibleMove);
    }
    Ok(Tour::from_sequence_unchecked(instance, mv.mv.apply_to(tour.sequence())))
}
