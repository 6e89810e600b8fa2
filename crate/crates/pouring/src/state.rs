//! Vessel states and the single pouring move.
//!
//! A state is a tuple of non-negative vessel values. One *pour* from a source
//! vessel into a (non-empty) destination vessel doubles the destination and
//! subtracts the same amount from the source, so the total volume never
//! changes. Everything else in this crate — the closed-form two-vessel
//! solver, the three- and four-vessel strategies, and the brute-force
//! tables — is built from this one move.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// Largest supported total volume. Keeping totals at or below `2^62` means a
/// pour can never overflow `u64` (a destination at most doubles and stays
/// bounded by the total).
pub const MAX_TOTAL: u64 = 1 << 62;

/// States with at most this many vessels are stored inline, without a heap
/// allocation. The solvers and the brute-force search work almost entirely
/// with 2–8 vessels, and they create states in very hot loops.
const INLINE_LEN: usize = 8;

#[derive(Clone)]
enum Repr {
    Inline { len: u8, vals: [u64; INLINE_LEN] },
    Heap(Box<[u64]>),
}

/// An ordered tuple of vessel values.
///
/// Vessel identity is positional; the canonical representative of a state
/// (used as a table key) is the same multiset sorted ascending, see
/// [`State::canonicalize`]. Construction enforces at least two vessels and a
/// total of at most [`MAX_TOTAL`].
#[derive(Clone)]
pub struct State {
    repr: Repr,
}

/// Errors from state construction and whole-state queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    /// A state needs at least two vessels.
    #[error("a state needs at least two vessels, got {0}")]
    TooFewVessels(usize),
    /// The vessel values sum past the supported maximum.
    #[error("total volume exceeds the supported maximum of 2^62")]
    TotalTooLarge,
    /// Every vessel is empty, so the gcd of the contents is undefined.
    #[error("every vessel is empty")]
    AllZero,
}

/// Reasons a requested pour is rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvalidPour {
    /// A vessel index is out of range for the state.
    #[error("vessel index {index} out of range for {len} vessels")]
    IndexOutOfRange { index: usize, len: usize },
    /// Source and destination must be different vessels.
    #[error("source and destination are both vessel {0}")]
    SameVessel(usize),
    /// Pouring into an empty vessel would change nothing; it is rejected so
    /// that step counts are meaningful.
    #[error("destination vessel {dst} is empty")]
    EmptyDestination { dst: usize },
    /// The destination may hold at most as much as the source.
    #[error("destination holds {dst_value} but source holds only {src_value}")]
    DestinationExceedsSource { dst_value: u64, src_value: u64 },
}

impl State {
    /// Builds a state from vessel values, validating the two invariants:
    /// at least two vessels, and a total of at most [`MAX_TOTAL`].
    pub fn new(values: &[u64]) -> Result<State, StateError> {
        if values.len() < 2 {
            return Err(StateError::TooFewVessels(values.len()));
        }
        let mut total: u64 = 0;
        for &v in values {
            total = total
                .checked_add(v)
                .ok_or(StateError::TotalTooLarge)?;
        }
        if total > MAX_TOTAL {
            return Err(StateError::TotalTooLarge);
        }
        Ok(State::from_trusted(values))
    }

    /// Builds a state from values already known to satisfy the invariants
    /// (used internally where pours preserve them).
    pub(crate) fn from_trusted(values: &[u64]) -> State {
        debug_assert!(values.len() >= 2);
        let repr = if values.len() <= INLINE_LEN {
            let mut vals = [0u64; INLINE_LEN];
            vals[..values.len()].copy_from_slice(values);
            Repr::Inline {
                len: values.len() as u8,
                vals,
            }
        } else {
            Repr::Heap(values.into())
        };
        State { repr }
    }

    /// The vessel values in positional order.
    pub fn values(&self) -> &[u64] {
        match &self.repr {
            Repr::Inline { len, vals } => &vals[..*len as usize],
            Repr::Heap(vals) => vals,
        }
    }

    fn values_mut(&mut self) -> &mut [u64] {
        match &mut self.repr {
            Repr::Inline { len, vals } => &mut vals[..*len as usize],
            Repr::Heap(vals) => vals,
        }
    }

    /// Number of vessels.
    pub fn len(&self) -> usize {
        self.values().len()
    }

    /// True when the state has no vessels. Construction forbids this; the
    /// method exists for completeness.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total volume across all vessels. Invariant under pours.
    pub fn total(&self) -> u64 {
        self.values().iter().sum()
    }

    /// True if some vessel is empty.
    pub fn has_zero(&self) -> bool {
        self.values().contains(&0)
    }

    /// Smallest vessel value.
    pub fn min_value(&self) -> u64 {
        *self.values().iter().min().expect("states are non-empty")
    }

    /// The canonical representative: the same multiset of values sorted
    /// ascending. Two states are the same position up to relabeling exactly
    /// when their canonical forms are equal.
    pub fn canonicalize(&self) -> State {
        let mut out = self.clone();
        out.values_mut().sort_unstable();
        out
    }

    /// True if the values are already sorted ascending.
    pub fn is_canonical(&self) -> bool {
        self.values().windows(2).all(|w| w[0] <= w[1])
    }
}

impl PartialEq for State {
    fn eq(&self, other: &State) -> bool {
        self.values() == other.values()
    }
}

impl Eq for State {}

impl Hash for State {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values().hash(state);
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &State) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for State {
    fn cmp(&self, other: &State) -> Ordering {
        self.values().cmp(other.values())
    }
}

impl std::ops::Index<usize> for State {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.values()[i]
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Applies one pour from vessel `src` into vessel `dst`.
///
/// The destination must be non-empty and hold at most as much as the source;
/// it then doubles while the source loses the same amount:
/// `(…, dst: d, …, src: s, …) → (…, dst: 2d, …, src: s − d, …)`.
pub fn pour(state: &State, src: usize, dst: usize) -> Result<State, InvalidPour> {
    let len = state.len();
    for index in [src, dst] {
        if index >= len {
            return Err(InvalidPour::IndexOutOfRange { index, len });
        }
    }
    if src == dst {
        return Err(InvalidPour::SameVessel(src));
    }
    let (s, d) = (state[src], state[dst]);
    if d == 0 {
        return Err(InvalidPour::EmptyDestination { dst });
    }
    if d > s {
        return Err(InvalidPour::DestinationExceedsSource {
            dst_value: d,
            src_value: s,
        });
    }
    let mut out = state.clone();
    let vals = out.values_mut();
    vals[dst] = 2 * d;
    vals[src] = s - d;
    Ok(out)
}

/// All states `t` with `pour(t, i, j) == s` for some valid pour `(i, j)`.
///
/// For an ordered pair `(d, r)` a predecessor exists exactly when `s[d]` is
/// even and positive: undoing the pour halves `d` and returns the poured
/// amount to `r`. The result is deduplicated and sorted for determinism.
pub fn reverse_pours(s: &State) -> Vec<State> {
    let vals = s.values();
    let mut out = Vec::new();
    for d in 0..vals.len() {
        if vals[d] == 0 || !vals[d].is_multiple_of(2) {
            continue;
        }
        let half = vals[d] / 2;
        for r in 0..vals.len() {
            if r == d {
                continue;
            }
            let mut t = s.clone();
            let tv = t.values_mut();
            tv[d] = half;
            tv[r] += half;
            debug_assert_eq!(pour(&t, r, d).as_ref(), Ok(s));
            out.push(t);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The 2-adic valuation of a vessel value: `Exact(e)` when `2^e` is the
/// highest power of two dividing it. Zero is divisible by every power of two,
/// so `parity(0)` is the distinguished [`Parity::Inf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    /// The value is divisible by `2^e` but not `2^(e+1)`.
    Exact(u32),
    /// The value is zero, hence divisible by every power of two.
    Inf,
}

impl Parity {
    /// The exponent for finite parities, `None` for [`Parity::Inf`].
    pub fn exponent(self) -> Option<u32> {
        match self {
            Parity::Exact(e) => Some(e),
            Parity::Inf => None,
        }
    }

    /// True when the value is `e`-even, i.e. divisible by `2^e`.
    pub fn is_even(self, e: u32) -> bool {
        match self {
            Parity::Exact(v) => v >= e,
            Parity::Inf => true,
        }
    }

    /// True when the value is `e`-odd, i.e. not divisible by `2^e`.
    pub fn is_odd(self, e: u32) -> bool {
        !self.is_even(e)
    }
}

/// The 2-adic valuation of `x`. See [`Parity`].
pub fn parity(x: u64) -> Parity {
    if x == 0 {
        Parity::Inf
    } else {
        Parity::Exact(x.trailing_zeros())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greatest common divisor of the non-empty vessels. Empty vessels are
/// neutral (`gcd(0, x) = x`); a state of only empty vessels has no gcd.
pub fn state_gcd(s: &State) -> Result<u64, StateError> {
    let g = s.values().iter().fold(0, |acc, &v| gcd(acc, v));
    if g == 0 {
        Err(StateError::AllZero)
    } else {
        Ok(g)
    }
}

/// One recorded pour: `src` loses to `dst`, which doubles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub src: usize,
    pub dst: usize,
}

/// Errors from replaying or concatenating a [`PourTrace`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    /// The number of snapshots differs from the number of moves.
    #[error("trace has {moves} moves but {states} snapshots")]
    LengthMismatch { moves: usize, states: usize },
    /// A recorded move is not a legal pour at its position.
    #[error("move {index} is not a legal pour: {source}")]
    IllegalMove {
        index: usize,
        source: InvalidPour,
    },
    /// Replaying a move does not reproduce the recorded snapshot.
    #[error("snapshot {index} does not match the replayed state")]
    SnapshotMismatch { index: usize },
    /// Concatenation requires the appended trace to start where this one ends.
    #[error("appended trace starts at {found} but the current state is {expected}")]
    Discontinuous { expected: State, found: State },
}

/// A pour sequence: the initial state, the moves, and the state after each
/// move. Built through [`PourTrace::record`], so a trace is valid by
/// construction; [`PourTrace::verify`] re-checks by replaying.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PourTrace {
    initial: State,
    moves: Vec<Move>,
    states: Vec<State>,
}

impl PourTrace {
    /// An empty trace sitting at `initial`.
    pub fn new(initial: State) -> PourTrace {
        PourTrace {
            initial,
            moves: Vec::new(),
            states: Vec::new(),
        }
    }

    /// The state the trace starts from.
    pub fn initial(&self) -> &State {
        &self.initial
    }

    /// The recorded moves in order.
    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// The state after each move, parallel to [`PourTrace::moves`].
    pub fn states(&self) -> &[State] {
        &self.states
    }

    /// Number of pours in the trace.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// True when no pour has been recorded.
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The state after the last recorded pour (the initial state if none).
    pub fn current(&self) -> &State {
        self.states.last().unwrap_or(&self.initial)
    }

    /// True when the current state has an empty vessel.
    pub fn ends_with_zero(&self) -> bool {
        self.current().has_zero()
    }

    /// Applies one pour to the current state and records it.
    pub fn record(&mut self, src: usize, dst: usize) -> Result<(), InvalidPour> {
        let next = pour(self.current(), src, dst)?;
        self.moves.push(Move { src, dst });
        self.states.push(next);
        Ok(())
    }

    /// Appends another trace; it must start exactly at the current state.
    #[allow(clippy::result_large_err)]
    pub fn append(&mut self, other: &PourTrace) -> Result<(), TraceError> {
        if other.initial() != self.current() {
            return Err(TraceError::Discontinuous {
                expected: self.current().clone(),
                found: other.initial().clone(),
            });
        }
        self.moves.extend_from_slice(&other.moves);
        self.states.extend_from_slice(&other.states);
        Ok(())
    }

    /// Replays the moves from the initial state and checks every snapshot.
    #[allow(clippy::result_large_err)]
    pub fn verify(&self) -> Result<(), TraceError> {
        if self.moves.len() != self.states.len() {
            return Err(TraceError::LengthMismatch {
                moves: self.moves.len(),
                states: self.states.len(),
            });
        }
        let mut cur = self.initial.clone();
        for (index, (mv, snap)) in self.moves.iter().zip(&self.states).enumerate() {
            cur = pour(&cur, mv.src, mv.dst)
                .map_err(|source| TraceError::IllegalMove { index, source })?;
            if &cur != snap {
                return Err(TraceError::SnapshotMismatch { index });
            }
        }
        Ok(())
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_state(max_len: usize, max_val: u64) -> impl Strategy<Value = State> {
        proptest::collection::vec(0..=max_val, 2..=max_len)
            .prop_map(|v| State::new(&v).unwrap())
    }

    proptest! {
        #[test]
        fn pours_conserve_the_total(s in arb_state(6, 1_000_000), src in 0usize..6, dst in 0usize..6) {
            if let Ok(next) = pour(&s, src, dst) {
                prop_assert_eq!(next.total(), s.total());
                prop_assert_eq!(next.len(), s.len());
            }
        }

        #[test]
        fn canonical_form_is_order_independent(mut v in proptest::collection::vec(0u64..1000, 2..7)) {
            let a = State::new(&v).unwrap().canonicalize();
            v.reverse();
            let b = State::new(&v).unwrap().canonicalize();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn random_pour_walks_scale_gcd_by_powers_of_two(
            start in arb_state(3, 10_000),
            steps in proptest::collection::vec((0usize..3, 0usize..3), 0..30),
        ) {
            prop_assume!(state_gcd(&start).is_ok());
            let g0 = state_gcd(&start).unwrap();
            let mut cur = start;
            for (src, dst) in steps {
                if let Ok(next) = pour(&cur, src, dst) {
                    cur = next;
                }
            }
            let g1 = state_gcd(&cur).unwrap_or(g0);
            prop_assert_eq!(g1 % g0, 0);
            prop_assert!((g1 / g0).is_power_of_two());
        }
    }
}
