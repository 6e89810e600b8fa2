//! Four-vessel solver running in `O(log n · log log n)` pours.
//!
//! The strategy has three phases. First, halving rounds on the three
//! smallest vessels shrink the minimum below `n / (2·log2 n)`. Second, the
//! largest vessel is frozen as a *pool* that is only ever poured from.
//! Third, a parity counter `e` tracks the exponent for which the gcd of the
//! three non-pool vessels is divisible by `2^e` but not `2^(e+1)`; each
//! loop iteration performs a handful of pours that raise `e` by at least
//! one. Once `2^e` outgrows what three positive vessels can carry, one of
//! them must be empty.
//!
//! Raising `e` is cheap because doubling a vessel from the pool raises that
//! vessel's 2-adic valuation by exactly one, and the opening phase keeps
//! the working vessels small enough that the pool never runs dry. The
//! batched branch raises `e` by `t` at once with `O(t + log log n)` pours,
//! which is where the `log log n` factor comes from.
//!
//! [`solve4`] returns a [`FourVesselRun`] carrying the pour trace plus
//! diagnostics: the history of the parity counter, which vessel served as
//! the pool, and which named sub-steps fired. [`step_count_profile`]
//! measures pour counts over random states for empirical growth checks.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::state::{gcd, PourTrace, State};
use crate::three_vessel::{run_frei, run_janson, Roles, A, B, C};

/// Why a four-vessel solve could not run (or, for
/// [`PoolExhausted`](FourVesselError::PoolExhausted), could not finish).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FourVesselError {
    /// The solver works on exactly four vessels.
    #[error("expected exactly four vessels, found {found}")]
    WrongVesselCount { found: usize },
    /// Every vessel must start non-empty; a state with an empty vessel is
    /// already solved.
    #[error("every vessel must start non-empty")]
    DegenerateState,
    /// A doubling from the pool was requested that the pool cannot cover.
    /// The solvency analysis rules this out, so seeing it signals an
    /// implementation bug rather than a hard input.
    #[error("the pool holds {available} but must cover a doubling of {needed}")]
    PoolExhausted { needed: u64, available: u64 },
}

/// A named sub-step of the solver, recorded in execution order.
///
/// Roles `A ≤ B ≤ C` name the three working (non-pool) vessels sorted
/// ascending by value at the time the sub-step fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// The whole total is 16 or less: repeatedly halve the three smallest
    /// vessels until one empties. No pool is designated.
    SmallTotalFallback,
    /// Opening rounds that shrank the minimum below `n / (2·log2 n)`.
    ShrinkSmallest { rounds: u32 },
    /// A main-loop iteration began with parity counter `e`.
    IterationStart { e: u32 },
    /// Pours raised the divisibility of the triple gcd past the tracked
    /// exponent; the counter was re-derived (it only ever moves up).
    GcdResync { e: u32 },
    /// The minimum was still at least `n / (4·log2 n)`: one halving round.
    FreiOnLargeMin,
    /// Exactly two working vessels sat at the parity level; poured the
    /// larger onto the smaller, raising `e` by one.
    PourBetweenOddPair,
    /// All three working vessels sat at the parity level; poured the
    /// largest onto the middle once to leave a single offender.
    OddTripleNormalize,
    /// The largest working vessel sat at the parity level; poured it onto
    /// the middle until their roles flipped.
    DrainOddLargest { pours: u32 },
    /// Doubled the middle vessel once from the pool, raising `e` by one.
    PoolToMiddle,
    /// The middle vessel was at the parity level but too large to double
    /// from the pool: cleared `t` parity levels at once with `t−1` pours
    /// onto the smallest, one quotient-bits round, and `t` pool pours.
    BatchedDoubling { t: u32 },
    /// Doubled the smallest vessel once from the pool, raising `e` by one.
    PoolToSmallest,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::SmallTotalFallback => write!(f, "small-total-fallback"),
            Phase::ShrinkSmallest { rounds } => write!(f, "shrink-smallest(rounds={rounds})"),
            Phase::IterationStart { e } => write!(f, "iteration(e={e})"),
            Phase::GcdResync { e } => write!(f, "gcd-resync(e={e})"),
            Phase::FreiOnLargeMin => write!(f, "halve-large-min"),
            Phase::PourBetweenOddPair => write!(f, "pour-between-odd-pair"),
            Phase::OddTripleNormalize => write!(f, "odd-triple-normalize"),
            Phase::DrainOddLargest { pours } => write!(f, "drain-odd-largest(pours={pours})"),
            Phase::PoolToMiddle => write!(f, "pool-to-middle"),
            Phase::BatchedDoubling { t } => write!(f, "batched-doubling(t={t})"),
            Phase::PoolToSmallest => write!(f, "pool-to-smallest"),
        }
    }
}

/// Result of a four-vessel solve: the trace plus diagnostics.
#[derive(Debug, Clone)]
pub struct FourVesselRun {
    trace: PourTrace,
    e_history: Vec<(usize, u32)>,
    pool_index: Option<usize>,
    phase_log: Vec<Phase>,
}

impl FourVesselRun {
    /// The recorded pours, replayable from the initial state.
    pub fn trace(&self) -> &PourTrace {
        &self.trace
    }

    /// Consumes the run, keeping only the trace.
    pub fn into_trace(self) -> PourTrace {
        self.trace
    }

    /// Every value the parity counter took, as `(pours so far, e)` pairs.
    /// `e` never decreases along this history.
    pub fn e_history(&self) -> &[(usize, u32)] {
        &self.e_history
    }

    /// Which vessel was frozen as the pool, if the run got that far. Runs
    /// that finish during the opening phase never designate one.
    pub fn pool_index(&self) -> Option<usize> {
        self.pool_index
    }

    /// The named sub-steps that fired, in order.
    pub fn phase_log(&self) -> &[Phase] {
        &self.phase_log
    }

    /// Number of pours performed.
    pub fn pour_count(&self) -> usize {
        self.trace.len()
    }

    /// The state after all pours; some vessel holds zero.
    pub fn final_state(&self) -> &State {
        self.trace.current()
    }
}

/// Tuning knobs for [`solve4_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Check the algebraic loop invariants at runtime and panic on any
    /// violation: the triple gcd is exactly `2^e`-divisible after every
    /// counter update, the counter rises every completed iteration, the
    /// loop stays within `⌈log2 n⌉` iterations, and the minimum sits below
    /// `n / (2·log2 n)` at every iteration end. Off by default; a violation
    /// signals an implementation bug, never a hard input.
    pub instrument: bool,
}

/// Empties one of four vessels in `O(log n · log log n)` pours.
///
/// Requires exactly four vessels, all non-empty. The returned run's final
/// state has at least one zero (possibly in the pool vessel).
pub fn solve4(s: &State) -> Result<FourVesselRun, FourVesselError> {
    solve4_with(s, SolveOptions::default())
}

/// [`solve4`] with explicit options.
pub fn solve4_with(s: &State, options: SolveOptions) -> Result<FourVesselRun, FourVesselError> {
    if s.len() != 4 {
        return Err(FourVesselError::WrongVesselCount { found: s.len() });
    }
    if s.values().contains(&0) {
        return Err(FourVesselError::DegenerateState);
    }
    let n = s.total();
    let mut run = FourVesselRun {
        trace: PourTrace::new(s.clone()),
        e_history: Vec::new(),
        pool_index: None,
        phase_log: Vec::new(),
    };

    // Tiny totals: the threshold arithmetic below degenerates, and plain
    // halving rounds on the three smallest vessels already finish fast.
    if n <= 16 {
        run.phase_log.push(Phase::SmallTotalFallback);
        small_total_fallback(&mut run.trace);
        debug_assert!(run.trace.current().has_zero());
        return Ok(run);
    }

    let log2n = (n as f64).log2();
    let half_threshold = n as f64 / (2.0 * log2n);
    let quarter_threshold = n as f64 / (4.0 * log2n);

    // Opening: halving rounds on the three smallest vessels until the
    // global minimum drops below n / (2·log2 n) or a vessel empties.
    let mut rounds = 0u32;
    loop {
        let cur = current4(&run.trace);
        if cur.contains(&0) {
            run.phase_log.push(Phase::ShrinkSmallest { rounds });
            return Ok(run);
        }
        if (*cur.iter().min().expect("four values") as f64) < half_threshold {
            break;
        }
        let order = argsort4(&cur);
        let mut roles = Roles::new(&mut run.trace, [order[0], order[1], order[2]]);
        run_frei(&mut roles);
        rounds += 1;
    }
    run.phase_log.push(Phase::ShrinkSmallest { rounds });

    // Freeze the largest vessel as the pool; the rest form the working
    // triple, kept sorted ascending as roles A ≤ B ≤ C.
    let cur = current4(&run.trace);
    let order = argsort4(&cur);
    let pool = order[3];
    let mut abc = [order[0], order[1], order[2]];
    run.pool_index = Some(pool);

    let mut e = triple_gcd(&cur, &abc).trailing_zeros();
    run.e_history.push((run.trace.len(), e));

    let r_prime = if n.is_power_of_two() {
        n.ilog2()
    } else {
        n.ilog2() + 1
    };
    let mut iterations = 0u32;

    loop {
        let cur = current4(&run.trace);
        if abc.iter().any(|&i| cur[i] == 0) || cur[pool] == 0 {
            break;
        }
        iterations += 1;
        assert!(
            iterations <= 2 * r_prime + 64,
            "runaway loop on input {s}: the parity counter stopped rising"
        );
        if options.instrument {
            assert!(
                iterations <= r_prime,
                "more than ceil(log2 n) loop iterations on input {s}"
            );
        }
        let e_at_entry = e;
        run.phase_log.push(Phase::IterationStart { e });

        let mut cur = cur;
        sort_roles(&cur, &mut abc);
        // A still large: one halving round on the triple before dispatch.
        if cur[abc[A]] as f64 >= quarter_threshold {
            let mut roles = Roles::new(&mut run.trace, abc);
            run_frei(&mut roles);
            run.phase_log.push(Phase::FreiOnLargeMin);
        }
        match rename_and_check(&run.trace, &mut abc, pool) {
            Some(c) => cur = c,
            None => break,
        }

        // Halving rounds can push the triple gcd's divisibility past the
        // tracked exponent; re-derive the counter so at least one vessel
        // always sits exactly at level e. The counter only moves up.
        let v = triple_gcd(&cur, &abc).trailing_zeros();
        debug_assert!(v >= e, "triple gcd lost divisibility on input {s}");
        if v > e {
            e = v;
            run.e_history.push((run.trace.len(), e));
            run.phase_log.push(Phase::GcdResync { e });
        }

        // Dispatch on how many working vessels sit at parity level e,
        // i.e. are not divisible by 2^(e+1).
        let offenders: Vec<usize> = (0..3).filter(|&r| odd_at_level(cur[abc[r]], e)).collect();
        debug_assert!(!offenders.is_empty(), "no vessel at level e on input {s}");
        if offenders.len() == 2 {
            // Merge the pair: pour the larger onto the smaller (the roles
            // are sorted, so on equal values the higher role is poured).
            let (dst, src) = (offenders[0], offenders[1]);
            pour_roles(&mut run.trace, &abc, src, dst);
            e += 1;
            note_e_update(&mut run, &abc, e, options.instrument, s);
            run.phase_log.push(Phase::PourBetweenOddPair);
            if rename_and_check(&run.trace, &mut abc, pool).is_none() {
                break;
            }
        } else {
            if offenders.len() == 3 {
                pour_roles(&mut run.trace, &abc, C, B);
                run.phase_log.push(Phase::OddTripleNormalize);
                match rename_and_check(&run.trace, &mut abc, pool) {
                    Some(c) => cur = c,
                    None => break,
                }
            }
            if odd_at_level(cur[abc[C]], e) {
                // The single offender is the largest: drain it onto the
                // middle until their roles flip.
                let mut pours = 0u32;
                while cur[abc[B]] <= cur[abc[C]] {
                    pour_roles(&mut run.trace, &abc, C, B);
                    pours += 1;
                    cur = current4(&run.trace);
                }
                run.phase_log.push(Phase::DrainOddLargest { pours });
                match rename_and_check(&run.trace, &mut abc, pool) {
                    Some(c) => cur = c,
                    None => break,
                }
            }
            let a_val = cur[abc[A]];
            let b_val = cur[abc[B]];
            if odd_at_level(b_val, e) && (b_val as f64) < quarter_threshold {
                pour_from_pool(&mut run, pool, abc[B])?;
                e += 1;
                note_e_update(&mut run, &abc, e, options.instrument, s);
                run.phase_log.push(Phase::PoolToMiddle);
                if rename_and_check(&run.trace, &mut abc, pool).is_none() {
                    break;
                }
            } else if odd_at_level(b_val, e) {
                // B is both at the level and too large to double from the
                // pool. Clear t levels at once: grow A by t−1 doublings
                // paid by B, crush the leftovers with one quotient-bits
                // round, then double the (new, small) A from the pool t
                // times. C's valuation caps how far this can go.
                let c_levels = cur[abc[C]].trailing_zeros();
                debug_assert!(c_levels > e, "largest vessel still at level e on input {s}");
                let t_c = c_levels - e;
                let t_a = (quarter_threshold / a_val as f64).log2();
                let t = ((t_a / 2.0).ceil().min(t_c as f64)).max(1.0) as u32;
                for _ in 1..t {
                    pour_roles(&mut run.trace, &abc, B, A);
                }
                {
                    let mut roles = Roles::sorted(&mut run.trace, abc);
                    run_janson(&mut roles);
                }
                if rename_and_check(&run.trace, &mut abc, pool).is_none() {
                    run.phase_log.push(Phase::BatchedDoubling { t });
                    break;
                }
                let mut pool_drained = false;
                for _ in 0..t {
                    pour_from_pool(&mut run, pool, abc[A])?;
                    if current4(&run.trace)[pool] == 0 {
                        pool_drained = true;
                        break;
                    }
                }
                run.phase_log.push(Phase::BatchedDoubling { t });
                if pool_drained {
                    break;
                }
                e += t;
                note_e_update(&mut run, &abc, e, options.instrument, s);
                if rename_and_check(&run.trace, &mut abc, pool).is_none() {
                    break;
                }
            } else if odd_at_level(a_val, e) {
                pour_from_pool(&mut run, pool, abc[A])?;
                e += 1;
                note_e_update(&mut run, &abc, e, options.instrument, s);
                run.phase_log.push(Phase::PoolToSmallest);
                if rename_and_check(&run.trace, &mut abc, pool).is_none() {
                    break;
                }
            }
        }

        debug_assert!(e > e_at_entry, "iteration did not raise e on input {s}");
        if options.instrument {
            let cur = current4(&run.trace);
            let min = abc.iter().map(|&i| cur[i]).min().expect("three roles");
            assert!(
                (min as f64) < half_threshold,
                "minimum {min} not below n/(2·log2 n) at iteration end on input {s}"
            );
            assert!(
                e > e_at_entry,
                "completed iteration did not raise the parity counter on input {s}"
            );
        }
    }

    debug_assert!(run.trace.current().has_zero());
    Ok(run)
}

/// One row of [`step_count_profile`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    /// Total volume the samples were drawn for.
    pub n: u64,
    /// How many random states were solved.
    pub samples: usize,
    /// Largest pour count observed.
    pub max_pours: usize,
    /// Mean pour count observed.
    pub mean_pours: f64,
}

/// Solves `samples` random four-part compositions of each listed total and
/// reports the max and mean pour counts, one row per input in input order.
/// The same `seed` reproduces the same table.
pub fn step_count_profile(n_values: &[u64], samples: usize, seed: u64) -> Vec<ProfileRow> {
    assert!(samples >= 1, "need at least one sample per total");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    n_values
        .iter()
        .map(|&n| {
            assert!(n >= 4, "a four-part composition needs a total of at least 4");
            let mut max_pours = 0usize;
            let mut total_pours = 0usize;
            for _ in 0..samples {
                let parts = random_composition4(&mut rng, n);
                let state = State::new(&parts).expect("compositions form states");
                let run = solve4(&state).expect("solver succeeds on positive states");
                max_pours = max_pours.max(run.pour_count());
                total_pours += run.pour_count();
            }
            ProfileRow {
                n,
                samples,
                max_pours,
                mean_pours: total_pours as f64 / samples as f64,
            }
        })
        .collect()
}

/// Uniform random composition of `n ≥ 4` into four positive parts, via
/// three distinct cut points.
fn random_composition4(rng: &mut ChaCha8Rng, n: u64) -> [u64; 4] {
    let picks = rand::seq::index::sample(rng, (n - 1) as usize, 3);
    let mut cuts: Vec<u64> = picks.iter().map(|i| i as u64 + 1).collect();
    cuts.sort_unstable();
    [
        cuts[0],
        cuts[1] - cuts[0],
        cuts[2] - cuts[1],
        n - cuts[2],
    ]
}

/// Halving rounds on the three smallest vessels until one of them empties.
/// Terminates because each round at least halves the triple's minimum.
fn small_total_fallback(trace: &mut PourTrace) {
    let cur = current4(trace);
    let order = argsort4(&cur);
    let triple = [order[0], order[1], order[2]];
    loop {
        let cur = current4(trace);
        if triple.iter().any(|&i| cur[i] == 0) {
            return;
        }
        let mut roles = Roles::sorted(trace, triple);
        run_frei(&mut roles);
    }
}

fn current4(trace: &PourTrace) -> [u64; 4] {
    let v = trace.current().values();
    [v[0], v[1], v[2], v[3]]
}

/// Stable ascending argsort of four values.
fn argsort4(v: &[u64; 4]) -> [usize; 4] {
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_unstable_by_key(|&i| (v[i], i));
    idx
}

fn sort_roles(cur: &[u64; 4], abc: &mut [usize; 3]) {
    abc.sort_unstable_by_key(|&i| (cur[i], i));
}

/// Re-sorts the roles ascending and reports the refreshed values, or `None`
/// when a vessel (working or pool) has emptied and the solve is done.
fn rename_and_check(trace: &PourTrace, abc: &mut [usize; 3], pool: usize) -> Option<[u64; 4]> {
    let cur = current4(trace);
    sort_roles(&cur, abc);
    if cur[abc[0]] == 0 || cur[pool] == 0 {
        None
    } else {
        Some(cur)
    }
}

fn triple_gcd(cur: &[u64; 4], abc: &[usize; 3]) -> u64 {
    abc.iter().fold(0, |g, &i| gcd(g, cur[i]))
}

/// Whether `x` is *not* divisible by `2^(e+1)`. A zero counts as divisible
/// by every power (the stop checks fire before this is ever consulted on a
/// zero; the convention is only a safety net).
fn odd_at_level(x: u64, e: u32) -> bool {
    x != 0 && x.trailing_zeros() <= e
}

fn pour_roles(trace: &mut PourTrace, abc: &[usize; 3], src_role: usize, dst_role: usize) {
    trace
        .record(abc[src_role], abc[dst_role])
        .expect("working-triple pours stay valid by construction");
}

/// One pour out of the pool, doubling `dst`. Insolvency is reported as an
/// error instead of a panic because it is the one invariant whose proof
/// leans on threshold arithmetic rather than plain algebra.
fn pour_from_pool(run: &mut FourVesselRun, pool: usize, dst: usize) -> Result<(), FourVesselError> {
    let cur = current4(&run.trace);
    if cur[dst] > cur[pool] {
        return Err(FourVesselError::PoolExhausted {
            needed: cur[dst],
            available: cur[pool],
        });
    }
    run.trace.record(pool, dst).expect("pool pour validated above");
    Ok(())
}

/// Records an `e` update and, when instrumented, checks that the triple gcd
/// is now exactly `2^e`-divisible.
fn note_e_update(run: &mut FourVesselRun, abc: &[usize; 3], e: u32, instrument: bool, s: &State) {
    run.e_history.push((run.trace.len(), e));
    if instrument {
        let cur = current4(&run.trace);
        let g = triple_gcd(&cur, abc);
        assert_eq!(
            g.trailing_zeros(),
            e,
            "triple gcd {g} is not exactly 2^{e}-divisible after an update on input {s}"
        );
    }
}
