//! Closed-form families of notable states.
//!
//! These generators produce the states used to probe the exact tables from
//! the hard side:
//!
//! * [`seq_ab`] — the slow-growing sequence `a` with `a_1 = 1` and
//!   `a_{i+1} = a_i + ⌈i/2⌉`, together with its prefix sums `b`. The
//!   construction keeps every pairwise gap from repeating "independently":
//!   each gap value appears among consecutive elements exactly twice, in
//!   adjacent (element-sharing) positions. Closed forms:
//!   `a_i = ⌊i²/4⌋ + 1` and `b_i = ⌊(2i³ + 3i² + 22i) / 24⌋`.
//! * [`g4_lower_instance`] — the first `k` terms of that sequence as a
//!   state; its total is exactly `b_k`, which lower-bounds the first total
//!   admitting a state that needs four pours.
//! * [`g3_instance`] — `(1, 4, 6, 9, 11, …)` with `a_i = a_{i−2} + 5`; its
//!   total is `⌊5k²/4⌋` and its exact pour count is 3 for every `k`.
//! * [`omega_instance`] — the tower-of-roots family: one bulk vessel plus
//!   `⌈n^(1/2)⌉, ⌈n^(1/4)⌉, …`, defined whenever consecutive roots are more
//!   than a factor two apart. These states witness that worst cases grow
//!   with the total even when many vessels are available.

use thiserror::Error;

use crate::state::State;

/// The sequence `a` and its prefix sums `b`, both 1-indexed conceptually:
/// `a[0]` holds `a_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPair {
    /// `a_1, …, a_{i_max}` with `a_1 = 1`, `a_{i+1} = a_i + ⌈i/2⌉`.
    pub a: Vec<u64>,
    /// Prefix sums `b_i = a_1 + … + a_i`.
    pub b: Vec<u64>,
}

/// Builds the first `i_max ≥ 1` terms of the gap-limited sequence and its
/// prefix sums.
pub fn seq_ab(i_max: usize) -> SeqPair {
    assert!(i_max >= 1, "need at least one term");
    let mut a = Vec::with_capacity(i_max);
    let mut b = Vec::with_capacity(i_max);
    let mut cur = 1u64;
    let mut sum = 0u64;
    for i in 1..=i_max as u64 {
        a.push(cur);
        sum += cur;
        b.push(sum);
        cur += i.div_ceil(2);
    }
    SeqPair { a, b }
}

/// Closed form `a_i = ⌊i²/4⌋ + 1` for the sequence of [`seq_ab`].
pub fn seq_a_closed(i: u64) -> u64 {
    ((i as u128 * i as u128) / 4) as u64 + 1
}

/// Closed form `b_i = ⌊(2i³ + 3i² + 22i) / 24⌋` for the prefix sums of
/// [`seq_ab`].
pub fn seq_b_closed(i: u64) -> u64 {
    let i = i as u128;
    ((2 * i * i * i + 3 * i * i + 22 * i) / 24) as u64
}

/// The state `(1, 4, 6, 9, 11, …)` on `k ≥ 3` vessels, following
/// `a_i = a_{i−2} + 5` after the first two terms. Its total is `⌊5k²/4⌋`
/// and its exact pour count is 3.
pub fn g3_instance(k: usize) -> State {
    assert!(k >= 3, "the family needs at least three vessels");
    let mut vals = Vec::with_capacity(k);
    vals.push(1u64);
    vals.push(4u64);
    for i in 2..k {
        vals.push(vals[i - 2] + 5);
    }
    let state = State::new(&vals).expect("family values form a state");
    debug_assert_eq!(state.total(), 5 * (k as u64) * (k as u64) / 4);
    state
}

/// The first `k ≥ 2` terms of the [`seq_ab`] sequence as a state. Its total
/// is exactly [`seq_b_closed`]`(k)`.
pub fn g4_lower_instance(k: usize) -> State {
    assert!(k >= 2, "a state needs at least two vessels");
    let seq = seq_ab(k);
    let state = State::new(&seq.a).expect("family values form a state");
    debug_assert_eq!(state.total(), seq.b[k - 1]);
    state
}

/// Why an [`omega_instance`] does not exist for the requested parameters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TooSmall {
    /// Adjacent roots must be more than a factor two apart:
    /// `⌈n^(1/2^level)⌉ > 2·⌈n^(1/2^(level+1))⌉` fails first at `level`.
    #[error("root {value} at level {level} is not more than twice the next root {next}")]
    RootSeparation { level: u32, value: u64, next: u64 },
    /// The roots alone already consume the whole total.
    #[error("the {count} roots sum to {root_sum}, leaving no bulk from total {n}")]
    RootsExceedTotal { count: u32, root_sum: u64, n: u64 },
    /// The bulk vessel must also be more than twice the first root.
    #[error("bulk {bulk} is not more than twice the first root {root}")]
    BulkTooSmall { bulk: u64, root: u64 },
}

/// The smallest `x ≥ 1` with `x^(2^level) ≥ n`, i.e. `⌈n^(1/2^level)⌉`
/// computed in integers (no floating point). `level = 0` returns `n`.
pub fn ceil_root_pow2(n: u64, level: u32) -> u64 {
    assert!(n >= 1, "roots need a positive argument");
    if level == 0 {
        return n;
    }
    let reaches = |x: u64| -> bool {
        // Does x^(2^level) reach n? Square repeatedly with early exit; the
        // intermediate never needs more than u128 before exceeding any u64.
        let mut acc = x as u128;
        for _ in 0..level {
            acc = acc.saturating_mul(acc);
            if acc >= n as u128 {
                return true;
            }
        }
        acc >= n as u128
    };
    let mut hi = 1u64;
    while !reaches(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2; // reaches(lo) is false (or lo = 0)
    // Invariant: reaches(hi), not reaches(lo).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The tower-of-roots state on `t ≥ 2` vessels for total `n`: one bulk
/// vessel holding `n − Σ ⌈n^(1/2^i)⌉` followed by the roots for
/// `i = 1 … t−1`, descending. Exists only when adjacent roots are more than
/// a factor two apart and the bulk is more than twice the first root;
/// otherwise the first violated condition is reported.
pub fn omega_instance(t: usize, n: u64) -> Result<State, TooSmall> {
    assert!(t >= 2, "the family needs at least two vessels");
    assert!(n >= 1, "the family needs a positive total");
    let roots: Vec<u64> = (1..t as u32).map(|i| ceil_root_pow2(n, i)).collect();
    for (idx, pair) in roots.windows(2).enumerate() {
        let level = idx as u32 + 1;
        if pair[0] <= 2 * pair[1] {
            return Err(TooSmall::RootSeparation {
                level,
                value: pair[0],
                next: pair[1],
            });
        }
    }
    let root_sum: u64 = roots.iter().sum();
    if root_sum >= n {
        return Err(TooSmall::RootsExceedTotal {
            count: roots.len() as u32,
            root_sum,
            n,
        });
    }
    let bulk = n - root_sum;
    if let Some(&first_root) = roots.first() {
        if bulk <= 2 * first_root {
            return Err(TooSmall::BulkTooSmall {
                bulk,
                root: first_root,
            });
        }
    }
    let mut vals = Vec::with_capacity(t);
    vals.push(bulk);
    vals.extend_from_slice(&roots);
    let state = State::new(&vals).expect("family values form a state");
    debug_assert_eq!(state.total(), n);
    Ok(state)
}
