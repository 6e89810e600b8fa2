//! Round-based strategies for three vessels.
//!
//! With three vessels an empty vessel is always reachable. The workhorses are
//! two *rounds* that each drive the smallest vessel down using the binary
//! expansion of the quotient between the two smaller vessels:
//!
//! * [`janson_round`] — with roles `A ≤ B ≤ C` and `p = ⌊B/A⌋`, walk the bits
//!   of `p` from least to most significant, pouring from `B` into `A` on a
//!   one bit and from `C` into `A` on a zero bit. `A` doubles every pour, so
//!   `B` ends at `B mod A`, strictly below the starting minimum.
//! * [`frei_round`] — rounds the quotient to the nearer side: if `B mod A`
//!   is at most the distance to the next multiple, run the round above;
//!   otherwise walk the bits of `q = ⌈B/A⌉` below its top bit and finish by
//!   pouring from `A` into `B`, leaving `A` at `q·A − B`. Either way the new
//!   smallest value is at most half the old one, which is what gives the
//!   `O((log n)^2)` solver its bound.
//!
//! [`state_shift`] is the prefix of the round that stops before the top bit:
//! it moves `(a, b, c)` to `(2^h·a, 2^h·a + (b mod a), c')` in `h = ⌊log2
//! ⌊b/a⌋⌋` pours, and is the engine of the remainder-based solver.
//!
//! The full solvers are [`solve3_frei`] (always works, at most `(log2 n)^2`
//! pours), [`solve3_remainder`] (at most `(r+1)·⌊log2 n⌋` pours for initial
//! remainder `r = b mod a`), and [`solve3_pow2`] (exactly `l` pours ending
//! with *two* empty vessels when `n / gcd = 2^l`).

use thiserror::Error;

use crate::state::{parity, state_gcd, PourTrace, State};

/// Errors shared by the three-vessel rounds and solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThreeVesselError {
    /// The operation needs exactly three vessels.
    #[error("expected exactly three vessels, got {0}")]
    WrongVesselCount(usize),
    /// Rounds need all three vessels non-empty.
    #[error("state {0} has an empty vessel")]
    DegenerateState(State),
    /// [`solve3_pow2`] needs `total / gcd` to be a power of two (at least 2).
    #[error("total {total} over gcd {gcd} gives {ratio}, which is not a power of two >= 2")]
    NotPowerOfTwo { total: u64, gcd: u64, ratio: u64 },
}

/// Outcome of one round.
///
/// Rounds accept the three vessels in any order and assign the roles
/// `A ≤ B ≤ C` internally (ties keep positional order). `state` holds the
/// final values in role order, `perm[role]` maps a role back to its input
/// position, and `trace` records the pours in input coordinates so it can be
/// replayed or spliced into a larger trace directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundResult {
    /// The pours in input coordinates, starting at the input state.
    pub trace: PourTrace,
    /// Final values in role order `(A, B, C)`.
    pub state: State,
    /// `perm[role]` is the input index holding that role.
    pub perm: [usize; 3],
}

impl RoundResult {
    /// Number of pours the round used.
    pub fn pour_count(&self) -> usize {
        self.trace.len()
    }

    /// Final values in input order (the last trace snapshot).
    pub fn final_state(&self) -> &State {
        self.trace.current()
    }
}

pub(crate) const A: usize = 0;
pub(crate) const B: usize = 1;
pub(crate) const C: usize = 2;

/// Stable ascending argsort of three values.
fn argsort3(v: &[u64]) -> [usize; 3] {
    let mut idx = [0usize, 1, 2];
    idx.sort_unstable_by_key(|&i| (v[i], i));
    idx
}

/// Role-indexed view over a trace for three chosen vessels.
pub(crate) struct Roles<'a> {
    trace: &'a mut PourTrace,
    /// Physical (trace) index of roles A, B, C.
    pub(crate) idx: [usize; 3],
}

impl<'a> Roles<'a> {
    pub(crate) fn new(trace: &'a mut PourTrace, idx: [usize; 3]) -> Roles<'a> {
        Roles { trace, idx }
    }

    /// Sorts the roles ascending by current value (stable in physical index).
    pub(crate) fn sorted(trace: &'a mut PourTrace, within: [usize; 3]) -> Roles<'a> {
        let cur = trace.current();
        let mut idx = within;
        idx.sort_unstable_by_key(|&i| (cur[i], i));
        Roles { trace, idx }
    }

    pub(crate) fn value(&self, role: usize) -> u64 {
        self.trace.current()[self.idx[role]]
    }

    pub(crate) fn pour(&mut self, src_role: usize, dst_role: usize) {
        self.trace
            .record(self.idx[src_role], self.idx[dst_role])
            .expect("round pours are legal by construction");
    }
}

/// Core of [`janson_round`]: walk all bits of `p = ⌊B/A⌋`.
pub(crate) fn run_janson(r: &mut Roles) {
    let (a, b) = (r.value(A), r.value(B));
    debug_assert!(0 < a && a <= b && b <= r.value(C));
    let p = b / a;
    for i in 0..=p.ilog2() {
        if (p >> i) & 1 == 1 {
            r.pour(B, A);
        } else {
            r.pour(C, A);
        }
    }
    debug_assert_eq!(r.value(B), b % a);
}

/// Core of [`frei_round`]: round the quotient to the nearer side.
pub(crate) fn run_frei(r: &mut Roles) {
    let (a, b) = (r.value(A), r.value(B));
    debug_assert!(0 < a && a <= b && b <= r.value(C));
    let p = b / a;
    let q = b.div_ceil(a);
    let r1 = b - p * a;
    let r2 = q * a - b;
    if r1 <= r2 {
        run_janson(r);
    } else {
        // Walk the bits of q below its top bit, then hand A's content to B.
        // A ends at exactly q·a − b = r2 < a/2.
        for i in 0..q.ilog2() {
            if (q >> i) & 1 == 1 {
                r.pour(B, A);
            } else {
                r.pour(C, A);
            }
        }
        r.pour(A, B);
        debug_assert_eq!(r.value(A), r2);
    }
}

/// Core of [`state_shift`]: the round prefix below the top bit of `⌊B/A⌋`.
/// Returns `(q, rem, h)` with `b = q·a + rem` and `h = ⌊log2 q⌋`.
pub(crate) fn run_state_shift(r: &mut Roles) -> (u64, u64, u32) {
    let (a, b) = (r.value(A), r.value(B));
    debug_assert!(0 < a && a <= b && b <= r.value(C));
    let q = b / a;
    let rem = b - q * a;
    let h = q.ilog2();
    for i in 0..h {
        if (q >> i) & 1 == 1 {
            r.pour(B, A);
        } else {
            r.pour(C, A);
        }
    }
    debug_assert_eq!(r.value(A), a << h);
    debug_assert_eq!(r.value(B), (a << h) + rem);
    debug_assert!(r.value(C) >= 1);
    (q, rem, h)
}

fn validate3(s: &State) -> Result<(), ThreeVesselError> {
    if s.len() != 3 {
        return Err(ThreeVesselError::WrongVesselCount(s.len()));
    }
    if s.has_zero() {
        return Err(ThreeVesselError::DegenerateState(s.clone()));
    }
    Ok(())
}

fn round_with(
    s: &State,
    run: impl FnOnce(&mut Roles),
) -> Result<RoundResult, ThreeVesselError> {
    validate3(s)?;
    let idx = argsort3(s.values());
    let mut trace = PourTrace::new(s.clone());
    run(&mut Roles::new(&mut trace, idx));
    let cur = trace.current();
    let state = State::from_trusted(&[cur[idx[0]], cur[idx[1]], cur[idx[2]]]);
    Ok(RoundResult {
        trace,
        state,
        perm: idx,
    })
}

/// One quotient-bit round. With roles `A ≤ B ≤ C` it pours once per bit of
/// `⌊B/A⌋` (from `B` on ones, from `C` on zeros, always into `A`), leaving
/// role `B` at `B mod A`, strictly below the starting minimum.
pub fn janson_round(s: &State) -> Result<RoundResult, ThreeVesselError> {
    round_with(s, run_janson)
}

/// The nearest-multiple round. Either delegates to [`janson_round`] or walks
/// `⌈B/A⌉` and returns the overshoot to `B`, so that the new smallest value
/// is at most half the old minimum (or the new middle strictly below half).
pub fn frei_round(s: &State) -> Result<RoundResult, ThreeVesselError> {
    round_with(s, run_frei)
}

/// The round prefix that stops before the top quotient bit: `(a, b, c)`
/// becomes `(2^h·a, 2^h·a + (b mod a), c')` in `h = ⌊log2 ⌊b/a⌋⌋` pours,
/// where `c' ≥ c − (2^h − 1)·a ≥ a` stays positive.
pub fn state_shift(s: &State) -> Result<RoundResult, ThreeVesselError> {
    round_with(s, |r| {
        run_state_shift(r);
    })
}

/// Empties a vessel by repeating [`frei_round`] until a zero appears. The
/// minimum at least halves per round, so the trace has at most
/// `(log2 n)^2` pours for total `n`.
pub fn solve3_frei(s: &State) -> Result<PourTrace, ThreeVesselError> {
    validate3(s)?;
    let n = s.total();
    let bound = (n as f64).log2().powi(2);
    let mut trace = PourTrace::new(s.clone());
    while !trace.current().has_zero() {
        let idx = argsort3(trace.current().values());
        run_frei(&mut Roles::new(&mut trace, idx));
        assert!(
            trace.len() as f64 <= bound,
            "round budget exceeded solving {s}: {} pours after reaching {}",
            trace.len(),
            trace.current(),
        );
    }
    Ok(trace)
}

/// Empties a vessel by repeatedly shifting to `(2^h·a, 2^h·a + r, c')` and
/// pouring once more from `B` into `A`, which leaves `B` at the remainder
/// `r = b mod a`. The smallest value strictly decreases each round (asserted),
/// so with initial remainder `r` this needs at most `(r+1)·⌊log2 n⌋` pours.
pub fn solve3_remainder(s: &State) -> Result<PourTrace, ThreeVesselError> {
    validate3(s)?;
    let mut trace = PourTrace::new(s.clone());
    let mut prev_min = s.min_value();
    while !trace.current().has_zero() {
        let idx = argsort3(trace.current().values());
        let mut roles = Roles::new(&mut trace, idx);
        run_state_shift(&mut roles);
        roles.pour(B, A);
        let new_min = trace.current().min_value();
        assert!(
            new_min < prev_min,
            "smallest vessel failed to decrease solving {s}: stuck at {} in {}",
            new_min,
            trace.current(),
        );
        prev_min = new_min;
    }
    Ok(trace)
}

/// Exact-length solver for totals with `n / gcd(s) = 2^l`, `l ≥ 1`: exactly
/// `l` pours, after which *two* vessels are empty.
///
/// Dividing by the current gcd, the three reduced values always contain
/// exactly two odd entries (their sum is even and their gcd is one). Pouring
/// between those two vessels — the smaller doubles; ties double the
/// lower-indexed one — makes all reduced entries even, doubling the gcd.
/// After `l` such pours the reduced total is 1, i.e. a single vessel holds
/// everything.
pub fn solve3_pow2(s: &State) -> Result<PourTrace, ThreeVesselError> {
    if s.len() != 3 {
        return Err(ThreeVesselError::WrongVesselCount(s.len()));
    }
    let total = s.total();
    let gcd = state_gcd(s).map_err(|_| ThreeVesselError::DegenerateState(s.clone()))?;
    let ratio = total / gcd;
    if !ratio.is_power_of_two() || ratio < 2 {
        return Err(ThreeVesselError::NotPowerOfTwo { total, gcd, ratio });
    }
    let l = ratio.trailing_zeros();
    let mut trace = PourTrace::new(s.clone());
    for _ in 0..l {
        let cur = trace.current();
        let g = state_gcd(cur).expect("a positive total keeps a nonzero gcd");
        let odd: Vec<usize> = (0..3)
            .filter(|&i| parity(cur[i] / g) == crate::state::Parity::Exact(0))
            .collect();
        debug_assert_eq!(odd.len(), 2, "reduced state {cur} must have two odd entries");
        let (i, j) = (odd[0], odd[1]);
        let (src, dst) = if cur[i] <= cur[j] { (j, i) } else { (i, j) };
        trace
            .record(src, dst)
            .expect("pours between the two odd vessels are legal");
    }
    let zeros = trace.current().values().iter().filter(|&&v| v == 0).count();
    debug_assert_eq!(zeros, 2, "expected two empty vessels in {}", trace.current());
    debug_assert_eq!(trace.len(), l as usize);
    Ok(trace)
}
