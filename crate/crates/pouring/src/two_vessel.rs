//! The two-vessel game, solved in closed form.
//!
//! With two vessels `(a, b)` there is never a choice: only the smaller vessel
//! can receive, so each move applies `f(a, b) = (2a, b − a)` for `a ≤ b` (and
//! symmetrically otherwise). Writing `s = (a + b) / gcd(a, b)`, the pair can
//! reach an empty vessel iff `s` is a power of two `2^k`, and then it takes
//! exactly `k` moves. The intuition: reduced by the gcd, the sum is invariant
//! and each move doubles the gcd of the pair, so only powers of two can be
//! exhausted; conversely each move makes the reduced pair coarser until one
//! side vanishes.

use thiserror::Error;

use crate::state::{gcd, PourTrace, State};

/// The answer for a pair, from [`verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoVesselVerdict {
    /// An empty vessel is reachable in exactly `steps` moves, and no fewer.
    Pourable { steps: u32 },
    /// No sequence of moves ever empties a vessel.
    NotPourable,
}

impl TwoVesselVerdict {
    /// True when an empty vessel is reachable.
    pub fn is_pourable(self) -> bool {
        matches!(self, TwoVesselVerdict::Pourable { .. })
    }

    /// The exact number of moves, when pourable.
    pub fn steps(self) -> Option<u32> {
        match self {
            TwoVesselVerdict::Pourable { steps } => Some(steps),
            TwoVesselVerdict::NotPourable => None,
        }
    }
}

/// Error returned by [`solve2`] on unpourable pairs, carrying the witness
/// ratio `(a + b) / gcd(a, b)` that is not a power of two.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("({a}, {b}) cannot reach an empty vessel: (a+b)/gcd = {ratio} is not a power of two")]
pub struct NotPourable {
    pub a: u64,
    pub b: u64,
    pub ratio: u64,
}

/// One forced move on a pair of positive values: the smaller vessel doubles.
/// For equal values the first vessel doubles.
pub fn f_step(a: u64, b: u64) -> (u64, u64) {
    assert!(a >= 1 && b >= 1, "f_step needs positive values, got ({a}, {b})");
    if a <= b {
        (2 * a, b - a)
    } else {
        (a - b, 2 * b)
    }
}

/// Decides pourability of `(a, b)` and the exact number of moves.
pub fn verdict(a: u64, b: u64) -> TwoVesselVerdict {
    assert!(a >= 1 && b >= 1, "verdict needs positive values, got ({a}, {b})");
    let ratio = (a + b) / gcd(a, b);
    if ratio.is_power_of_two() {
        TwoVesselVerdict::Pourable {
            steps: ratio.trailing_zeros(),
        }
    } else {
        TwoVesselVerdict::NotPourable
    }
}

/// Produces the full (unique) move sequence for a pourable pair. The returned
/// trace has exactly `verdict(a, b)` moves and ends with an empty vessel.
pub fn solve2(a: u64, b: u64) -> Result<PourTrace, NotPourable> {
    let TwoVesselVerdict::Pourable { steps } = verdict(a, b) else {
        return Err(NotPourable {
            a,
            b,
            ratio: (a + b) / gcd(a, b),
        });
    };
    let initial = State::new(&[a, b]).expect("two positive values form a state");
    let mut trace = PourTrace::new(initial);
    let (mut x, mut y) = (a, b);
    for _ in 0..steps {
        // The smaller vessel is the destination; ties double the first one,
        // matching f_step.
        let (src, dst) = if x <= y { (1, 0) } else { (0, 1) };
        trace
            .record(src, dst)
            .expect("forced two-vessel moves are always legal");
        (x, y) = f_step(x, y);
    }
    debug_assert!(trace.ends_with_zero());
    Ok(trace)
}
