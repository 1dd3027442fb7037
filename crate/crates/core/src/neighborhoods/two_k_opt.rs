use super::two_opt::two_opt_delta;
use crate::instance::Instance;
use crate::tour::{Move, MoveDelta, Tour};

const NONE: u8 = 0;
const SHRINK_LEFT: u8 = 1;
const SHRINK_RIGHT: u8 = 2;
const EXCHANGE: u8 = 3;

/// Tables of the nested 2-Opt dynamic program.
///
/// `f(i, j)` is the best total delta of a chain of nested exchanges with all
/// endpoints in `[i, j]`, applied to the span in its current orientation.
/// `r(i, j)` is the same for the span already reversed; it is infinite when
/// the span holds a complete pair, since reversing it would break
/// precedence.
#[derive(Debug, Clone)]
pub struct FrTables {
    side: usize,
    f: Vec<f64>,
    r: Vec<f64>,
    f_choice: Vec<u8>,
    r_choice: Vec<u8>,
}

impl FrTables {
    /// Fills both tables by increasing span length, `O(n^2)` time and space.
    pub fn build(instance: &Instance, tour: &Tour) -> FrTables {
        let seq = tour.sequence();
        let side = seq.len();
        let end = side - 1;
        let mut t = FrTables {
            side,
            f: vec![0.0; side * side],
            r: vec![0.0; side * side],
            f_choice: vec![NONE; side * side],
            r_choice: vec![NONE; side * side],
        };
        for len in 0..=end {
            for i in 0..=(end - len) {
                let j = i + len;
                let at = i * side + j;
                if len >= 2 {
                    let delta = two_opt_delta(instance, seq, i, j);
                    t.fill(at, false, t.get_f(i + 1, j), t.get_f(i, j - 1), delta + t.get_r(i + 1, j - 1));
                }
                if t.reversal_blocked(instance, tour, i, j) {
                    t.r[at] = f64::INFINITY;
                    t.r_choice[at] = NONE;
                } else if len >= 2 {
                    let delta = two_opt_delta(instance, seq, i, j);
                    t.fill(at, true, t.get_r(i + 1, j), t.get_r(i, j - 1), delta + t.get_f(i + 1, j - 1));
                }
            }
        }
        t
    }

    fn reversal_blocked(&self, instance: &Instance, tour: &Tour, i: usize, j: usize) -> bool {
        if i >= j {
            return false;
        }
        let first = tour.at(i);
        let last = tour.at(j);
        let first_closes = instance.is_pickup(first) && {
            let p = tour.position(instance.delivery_of(first));
            p > i && p <= j
        };
        let last_opens = instance.is_delivery(last) && {
            let p = tour.position(instance.pickup_of(last));
            p >= i && p < j
        };
        first_closes || last_opens
    }

    fn fill(&mut self, at: usize, reversed: bool, left: f64, right: f64, exchange: f64) {
        let (mut value, mut choice) = (left, SHRINK_LEFT);
        if right < value {
            value = right;
            choice = SHRINK_RIGHT;
        }
        if exchange < value {
            value = exchange;
            choice = EXCHANGE;
        }
        if reversed {
            self.r[at] = value;
            self.r_choice[at] = choice;
        } else {
            self.f[at] = value;
            self.f_choice[at] = choice;
        }
    }

    fn get_f(&self, i: usize, j: usize) -> f64 {
        self.f[i * self.side + j]
    }

    fn get_r(&self, i: usize, j: usize) -> f64 {
        self.r[i * self.side + j]
    }

    /// Best chain value on `[i, j]` in the current orientation.
    pub fn f(&self, i: usize, j: usize) -> f64 {
        assert!(i <= j && j < self.side);
        self.get_f(i, j)
    }

    /// Best chain value on `[i, j]` after reversal; infinite if blocked.
    pub fn r(&self, i: usize, j: usize) -> f64 {
        assert!(i <= j && j < self.side);
        self.get_r(i, j)
    }

    /// Best value over the whole tour.
    pub fn best_value(&self) -> f64 {
        self.get_f(0, self.side - 1)
    }

    /// Walks the choice tags from the root and returns the exchanges of the
    /// optimal chain, outermost first.
    pub fn decode(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let (mut i, mut j, mut reversed) = (0, self.side - 1, false);
        while i < j {
            let at = i * self.side + j;
            let choice = if reversed { self.r_choice[at] } else { self.f_choice[at] };
            match choice {
                SHRINK_LEFT => i += 1,
                SHRINK_RIGHT => j -= 1,
                EXCHANGE => {
                    out.push((i, j));
                    i += 1;
                    j -= 1;
                    reversed = !reversed;
                }
                _ => break,
            }
        }
        out
    }
}

/// Best precedence-feasible chain of nested 2-Opts over the whole tour.
///
/// The delta is at most zero; an empty chain means no improvement exists.
pub fn two_k_opt_best(instance: &Instance, tour: &Tour) -> MoveDelta {
    let tables = FrTables::build(instance, tour);
    let exchanges = tables.decode();
    let delta = if exchanges.is_empty() { 0.0 } else { tables.best_value() };
    MoveDelta {
        mv: Move::TwoKOpt { exchanges },
        delta,
        feasible: true,
    }
}
