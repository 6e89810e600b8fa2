//! Solvers and exact tables for the double pouring problem.
//!
//! The game: a number of vessels hold non-negative integer amounts. A move
//! picks a source and a destination holding at most as much as the source,
//! and the source tops the destination up to double its content. The goal is
//! to empty some vessel in as few moves as possible.
//!
//! The crate provides, per vessel count:
//!
//! * [`two_vessel`] — a complete closed-form answer: `(a, b)` can reach an
//!   empty vessel iff `(a + b) / gcd(a, b)` is a power of two, and the number
//!   of moves is exactly that exponent.
//! * [`three_vessel`] — round-based strategies that always succeed, including
//!   one needing `O((log n)^2)` moves and an exact-length solver for totals
//!   `n` with `n / gcd` a power of two.
//! * [`four_vessel`] — a strategy for four vessels that empties a vessel in
//!   `O(log n · log log n)` moves, with optional runtime instrumentation of
//!   its correctness invariants.
//! * [`oracle`] — an exact breadth-first tablebase over all states of a given
//!   total, answering minimal move counts and the extremal table values
//!   `g`/`h` (first total whose worst state needs `≥ N` moves / last total
//!   whose worst state needs `≤ N`).
//! * [`instances`] — closed-form families of notable states (hard instances
//!   and growth witnesses) used to probe the tables.
//!
//! States, the single pouring move, and replayable traces live in [`state`].

pub mod instances;
pub mod oracle;
pub mod state;
pub mod three_vessel;
pub mod two_vessel;
pub mod four_vessel;

pub use state::{
    parity, pour, reverse_pours, state_gcd, InvalidPour, Move, Parity, PourTrace, State,
    StateError, TraceError, MAX_TOTAL,
};
