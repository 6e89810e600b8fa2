//! Exact minimal pour counts by backward breadth-first search.
//!
//! For a fixed vessel count `k` and total `n`, the set of canonical states
//! (multisets written ascending) is finite and closed under pouring. Every
//! state containing an empty vessel needs 0 pours; walking the pour relation
//! backwards from all of those at once labels each canonical state with its
//! exact distance to the goal. A state no backward walk reaches can never be
//! solved — that only happens with two vessels.
//!
//! On top of the per-total tables sit the extremal scans:
//!
//! * `g(N, k)` — the first total whose hardest state needs at least `N`
//!   pours (equivalently: below it, everything is `(N−1)`-solvable).
//! * `h(N, k)` — the last total whose hardest state needs at most `N` pours.
//!   For three vessels the scan is conclusive once the cap reaches
//!   `5·2^N − 1`: every total beyond that bound contains a state needing
//!   more than `N` pours. For `k ≥ 4` no such bound is proven, so results
//!   are lower bounds for the given cap.
//! * `g'(N, k)` / `h'(N, k)` — first / last total whose hardest state needs
//!   *exactly* `N` pours.
//!
//! Tables can be cached on disk, one file per `(n, k)` slice, in a
//! fixed-width little-endian format (see [`cache`]).

mod cache;

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::path::PathBuf;
use std::sync::Mutex;

use rayon::prelude::*;
use thiserror::Error;

use crate::state::{reverse_pours, State};

/// The exact answer for one state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pourability {
    /// An empty vessel is reachable in exactly this many pours, and no fewer.
    Exactly(u32),
    /// No pour sequence ever empties a vessel (possible only for `k = 2`).
    NotPourable,
}

impl Pourability {
    /// The exact distance, when solvable.
    pub fn steps(self) -> Option<u32> {
        match self {
            Pourability::Exactly(d) => Some(d),
            Pourability::NotPourable => None,
        }
    }
}

/// Errors from table construction and the extremal scans.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Tables need at least two vessels.
    #[error("tables need at least two vessels, got {0}")]
    BadVesselCount(usize),
    /// Tables need a positive total.
    #[error("tables need a positive total")]
    ZeroTotal,
    /// The requested total exceeds the configured slice cap for `k` vessels.
    #[error("total {n} exceeds the cap {cap} configured for {k} vessels")]
    CapExceeded { n: u64, k: usize, cap: u64 },
    /// A scan for an exact worst-case value found no matching total.
    #[error("no total up to {cap} has worst-case pour count {steps} with {k} vessels")]
    NotFoundWithinCap { steps: u32, k: usize, cap: u64 },
}

/// Iterator over all canonical states with a fixed vessel count and total,
/// in lexicographic order. See [`enumerate_states`].
pub struct StateIter {
    next: Option<Vec<u64>>,
}

/// Enumerates every canonical state (values ascending) of `k ≥ 2` vessels
/// summing to `n`, in lexicographic order. The count equals the number of
/// partitions of `n` into at most `k` parts.
pub fn enumerate_states(n: u64, k: usize) -> StateIter {
    assert!(k >= 2, "canonical states need at least two vessels");
    let mut first = vec![0u64; k];
    first[k - 1] = n;
    StateIter { next: Some(first) }
}

impl Iterator for StateIter {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        let cur = self.next.take()?;
        let out = State::from_trusted(&cur);
        self.next = successor(cur);
        Some(out)
    }
}

/// The lexicographic successor among nondecreasing fixed-sum tuples, if any.
fn successor(mut v: Vec<u64>) -> Option<Vec<u64>> {
    let k = v.len();
    let n: u128 = v.iter().map(|&x| x as u128).sum();
    let mut prefix: u128 = n - v[k - 1] as u128 - v[k - 2] as u128;
    // Try to bump position i, filling everything after it as small as the
    // nondecreasing constraint allows and dumping the remainder into the
    // last slot. Feasible iff the remainder still covers the bumped value.
    for i in (0..k - 1).rev() {
        let cand = v[i] as u128 + 1;
        let m = (k - 1 - i) as u128;
        if n >= prefix + cand + m * cand {
            v[i] = cand as u64;
            for slot in v.iter_mut().take(k - 1).skip(i + 1) {
                *slot = cand as u64;
            }
            let used = prefix + cand + (m - 1) * cand;
            v[k - 1] = (n - used) as u64;
            return Some(v);
        }
        if i > 0 {
            prefix -= v[i - 1] as u128;
        }
    }
    None
}

/// The exact-distance table for one `(n, k)` slice.
///
/// Lookups canonicalize their argument; the state must belong to the slice
/// (same vessel count and total).
#[derive(Debug, Clone)]
pub struct PourabilityTable {
    n: u64,
    k: usize,
    distances: HashMap<State, u32>,
    state_count: u64,
    max_distance: u32,
}

impl PourabilityTable {
    /// The slice total.
    pub fn total(&self) -> u64 {
        self.n
    }

    /// The slice vessel count.
    pub fn vessels(&self) -> usize {
        self.k
    }

    /// Number of canonical states in the slice.
    pub fn state_count(&self) -> u64 {
        self.state_count
    }

    /// Exact pourability of a state from this slice.
    pub fn pourability(&self, s: &State) -> Pourability {
        assert_eq!(s.len(), self.k, "state has the wrong vessel count");
        assert_eq!(s.total(), self.n, "state has the wrong total");
        match self.distances.get(&s.canonicalize()) {
            Some(&d) => Pourability::Exactly(d),
            None => Pourability::NotPourable,
        }
    }

    /// The worst exact distance over all solvable states of the slice.
    pub fn max_pourings(&self) -> u32 {
        self.max_distance
    }

    /// True when some state of the slice is unsolvable (only for `k = 2`).
    pub fn has_unpourable(&self) -> bool {
        (self.distances.len() as u64) < self.state_count
    }

    /// All canonical states with their pourability, in lexicographic order.
    pub fn iter_all(&self) -> impl Iterator<Item = (State, Pourability)> + '_ {
        enumerate_states(self.n, self.k).map(|s| {
            let p = match self.distances.get(&s) {
                Some(&d) => Pourability::Exactly(d),
                None => Pourability::NotPourable,
            };
            (s, p)
        })
    }

    /// Lexicographically first state needing at least `steps` pours.
    pub fn first_needing_at_least(&self, steps: u32) -> Option<State> {
        self.iter_all().find_map(|(s, p)| match p {
            Pourability::Exactly(d) if d >= steps => Some(s),
            Pourability::NotPourable => Some(s),
            _ => None,
        })
    }

    /// Lexicographically first state needing exactly `steps` pours.
    pub fn first_needing_exactly(&self, steps: u32) -> Option<State> {
        self.iter_all().find_map(|(s, p)| match p {
            Pourability::Exactly(d) if d == steps => Some(s),
            _ => None,
        })
    }

    /// Lexicographically first state realizing [`Self::max_pourings`].
    pub fn hardest_state(&self) -> State {
        self.first_needing_exactly(self.max_distance)
            .expect("the maximum distance is realized by some state")
    }

    /// Builds the table by multi-source backward BFS from all states that
    /// already contain an empty vessel.
    fn build(n: u64, k: usize) -> PourabilityTable {
        let mut distances: HashMap<State, u32> = HashMap::new();
        let mut queue: VecDeque<State> = VecDeque::new();
        let mut state_count = 0u64;
        for s in enumerate_states(n, k) {
            state_count += 1;
            if s.has_zero() {
                distances.insert(s.clone(), 0);
                queue.push_back(s);
            }
        }
        let mut max_distance = 0u32;
        while let Some(s) = queue.pop_front() {
            let d = distances[&s];
            for pred in reverse_pours(&s) {
                let pred = pred.canonicalize();
                if let Entry::Vacant(slot) = distances.entry(pred) {
                    let pred = slot.key().clone();
                    slot.insert(d + 1);
                    max_distance = max_distance.max(d + 1);
                    queue.push_back(pred);
                }
            }
        }
        if k >= 3 {
            // With three or more vessels every state is solvable; a gap here
            // would mean the edge relation is wrong.
            assert_eq!(
                distances.len() as u64,
                state_count,
                "unreached states in the ({n}, {k}) slice"
            );
        }
        PourabilityTable {
            n,
            k,
            distances,
            state_count,
            max_distance,
        }
    }
}

/// One row of an extremal scan: the value of `g`/`h`/`g'`/`h'` at `(N, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GHRecord {
    /// The pour-count parameter `N`.
    pub steps: u32,
    /// Vessel count.
    pub k: usize,
    /// The extremal total.
    pub value: u64,
    /// Whether the scan proves this value exact (rather than a bound given
    /// the cap).
    pub exact: bool,
    /// A state of total `value` witnessing the defining property: for `g`
    /// and `g'`/`h'` a state needing at least / exactly `N` pours, for `h`
    /// the hardest state of the slice.
    pub witness: State,
}

/// Per-vessel-count caps on the slice total, bounding table memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Cap for `k ≤ 3`.
    pub k3: u64,
    /// Cap for `k = 4`.
    pub k4: u64,
    /// Cap for `k ≥ 5`.
    pub k5_plus: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            k3: 4096,
            k4: 1024,
            k5_plus: 300,
        }
    }
}

impl Caps {
    /// The same cap for every vessel count.
    pub fn uniform(cap: u64) -> Caps {
        Caps {
            k3: cap,
            k4: cap,
            k5_plus: cap,
        }
    }

    /// The cap applying to `k` vessels.
    pub fn for_k(&self, k: usize) -> u64 {
        match k {
            0..=3 => self.k3,
            4 => self.k4,
            _ => self.k5_plus,
        }
    }
}

/// Table factory with caps, optional disk caching, and memoized per-slice
/// summaries. Scans over many totals run their slices as independent
/// parallel jobs.
pub struct Oracle {
    caps: Caps,
    cache_dir: Option<PathBuf>,
    /// Memoized worst-case distance per built slice (tables themselves are
    /// not kept in memory; they reload from disk when a cache directory is
    /// configured, or rebuild).
    summaries: Mutex<HashMap<(u64, usize), u32>>,
    /// Cache writes are serialized through a single writer.
    io_lock: Mutex<()>,
}

impl Default for Oracle {
    fn default() -> Oracle {
        Oracle::new(Caps::default())
    }
}

impl Oracle {
    /// An oracle with the given caps and no disk cache.
    pub fn new(caps: Caps) -> Oracle {
        Oracle {
            caps,
            cache_dir: None,
            summaries: Mutex::new(HashMap::new()),
            io_lock: Mutex::new(()),
        }
    }

    /// Enables the on-disk slice cache under `dir`.
    pub fn with_cache_dir(mut self, dir: PathBuf) -> Oracle {
        self.cache_dir = Some(dir);
        self
    }

    /// The configured caps.
    pub fn caps(&self) -> Caps {
        self.caps
    }

    fn check_request(&self, n: u64, k: usize) -> Result<(), OracleError> {
        if k < 2 {
            return Err(OracleError::BadVesselCount(k));
        }
        if n == 0 {
            return Err(OracleError::ZeroTotal);
        }
        let cap = self.caps.for_k(k);
        if n > cap {
            return Err(OracleError::CapExceeded { n, k, cap });
        }
        Ok(())
    }

    /// The exact-distance table for the `(n, k)` slice, loaded from the
    /// cache when possible and stored there after a build. Cache write
    /// failures are ignored (the cache is purely an accelerator).
    pub fn table(&self, n: u64, k: usize) -> Result<PourabilityTable, OracleError> {
        self.check_request(n, k)?;
        if let Some(dir) = &self.cache_dir {
            if let Some(table) = cache::load(dir, n, k) {
                self.note_summary(&table);
                return Ok(table);
            }
        }
        let table = PourabilityTable::build(n, k);
        self.note_summary(&table);
        if let Some(dir) = &self.cache_dir {
            let _guard = self.io_lock.lock().unwrap();
            let _ = cache::save(dir, &table);
        }
        Ok(table)
    }

    fn note_summary(&self, table: &PourabilityTable) {
        self.summaries
            .lock()
            .unwrap()
            .insert((table.n, table.k), table.max_distance);
    }

    /// The worst-case exact distance over all states of the `(n, k)` slice.
    pub fn m(&self, n: u64, k: usize) -> Result<u32, OracleError> {
        self.check_request(n, k)?;
        if let Some(&m) = self.summaries.lock().unwrap().get(&(n, k)) {
            return Ok(m);
        }
        Ok(self.table(n, k)?.max_pourings())
    }

    /// Worst-case distances for a batch of totals, computed in parallel.
    fn m_batch(&self, lo: u64, hi: u64, k: usize) -> Result<Vec<(u64, u32)>, OracleError> {
        (lo..=hi)
            .into_par_iter()
            .map(|n| Ok((n, self.m(n, k)?)))
            .collect()
    }

    /// `g(N, k)`: the first total whose hardest state needs at least
    /// `steps` pours. Scans upward from 1; fails with
    /// [`OracleError::CapExceeded`] if the cap is reached first.
    pub fn compute_g(&self, steps: u32, k: usize) -> Result<GHRecord, OracleError> {
        if k < 3 {
            // With two vessels unsolvable states exist at every even total,
            // so the first-total question is not meaningful.
            return Err(OracleError::BadVesselCount(k));
        }
        let cap = self.caps.for_k(k);
        let chunk = 16u64;
        let mut lo = 1u64;
        while lo <= cap {
            let hi = (lo + chunk - 1).min(cap);
            for (n, m) in self.m_batch(lo, hi, k)? {
                if m >= steps {
                    let table = self.table(n, k)?;
                    let witness = table
                        .first_needing_at_least(steps)
                        .expect("the scan hit guarantees a witness");
                    return Ok(GHRecord {
                        steps,
                        k,
                        value: n,
                        exact: true,
                        witness,
                    });
                }
            }
            lo = hi + 1;
        }
        Err(OracleError::CapExceeded {
            n: cap + 1,
            k,
            cap,
        })
    }

    /// For three vessels, `h(N, 3)` is provably below `5·2^N − 1`; a scan to
    /// that point is conclusive.
    pub fn conclusive_h_cap(steps: u32) -> u64 {
        5 * (1u64 << steps) - 1
    }

    /// `h(N, k)`: the last total up to `cap` whose hardest state needs at
    /// most `steps` pours. Exact if `k = 3` and the cap reaches
    /// [`Oracle::conclusive_h_cap`]; otherwise a lower bound for the cap.
    pub fn compute_h(&self, steps: u32, k: usize, cap: u64) -> Result<GHRecord, OracleError> {
        if k < 3 {
            return Err(OracleError::BadVesselCount(k));
        }
        self.check_request(cap.max(1), k)?;
        let best = self
            .m_batch(1, cap, k)?
            .into_iter()
            .filter(|&(_, m)| m <= steps)
            .map(|(n, _)| n)
            .max()
            .expect("a total of 1 is always solvable in zero pours");
        let table = self.table(best, k)?;
        Ok(GHRecord {
            steps,
            k,
            value: best,
            exact: k == 3 && cap >= Oracle::conclusive_h_cap(steps),
            witness: table.hardest_state(),
        })
    }

    /// `g'(N, k)`: the first total up to `cap` whose hardest state needs
    /// exactly `steps` pours.
    pub fn compute_g_prime(
        &self,
        steps: u32,
        k: usize,
        cap: u64,
    ) -> Result<GHRecord, OracleError> {
        if k < 3 {
            return Err(OracleError::BadVesselCount(k));
        }
        self.check_request(cap.max(1), k)?;
        let chunk = 16u64;
        let mut lo = 1u64;
        while lo <= cap {
            let hi = (lo + chunk - 1).min(cap);
            for (n, m) in self.m_batch(lo, hi, k)? {
                if m == steps {
                    let table = self.table(n, k)?;
                    return Ok(GHRecord {
                        steps,
                        k,
                        value: n,
                        exact: true,
                        witness: table.hardest_state(),
                    });
                }
            }
            lo = hi + 1;
        }
        Err(OracleError::NotFoundWithinCap { steps, k, cap })
    }

    /// `h'(N, k)`: the last total up to `cap` whose hardest state needs
    /// exactly `steps` pours. Exactness as for [`Oracle::compute_h`].
    pub fn compute_h_prime(
        &self,
        steps: u32,
        k: usize,
        cap: u64,
    ) -> Result<GHRecord, OracleError> {
        if k < 3 {
            return Err(OracleError::BadVesselCount(k));
        }
        self.check_request(cap.max(1), k)?;
        let best = self
            .m_batch(1, cap, k)?
            .into_iter()
            .filter(|&(_, m)| m == steps)
            .map(|(n, _)| n)
            .max()
            .ok_or(OracleError::NotFoundWithinCap { steps, k, cap })?;
        let table = self.table(best, k)?;
        Ok(GHRecord {
            steps,
            k,
            value: best,
            exact: k == 3 && cap >= Oracle::conclusive_h_cap(steps),
            witness: table.hardest_state(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::pour;

    fn st(vals: &[u64]) -> State {
        State::new(vals).unwrap()
    }

    /// Partitions of `n` into at most `k` parts, counted independently of
    /// the enumeration (standard coin-style dynamic program over part sizes,
    /// using the conjugate formulation "parts of size at most k").
    fn partition_count(n: u64, k: usize) -> u64 {
        let n = n as usize;
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for part in 1..=k.min(n) {
            for total in part..=n {
                ways[total] += ways[total - part];
            }
        }
        ways[n]
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let states: Vec<State> = enumerate_states(3, 3).collect();
        assert_eq!(
            states,
            vec![st(&[0, 0, 3]), st(&[0, 1, 2]), st(&[1, 1, 1])]
        );

        assert_eq!(enumerate_states(11, 3).count() as u64, 16);
        assert_eq!(partition_count(11, 3), 16);

        for k in 2..=6usize {
            for n in 0..=40u64 {
                let states: Vec<State> = enumerate_states(n, k).collect();
                assert_eq!(states.len() as u64, partition_count(n, k), "count ({n},{k})");
                for s in &states {
                    assert!(s.is_canonical());
                    assert_eq!(s.total(), n);
                    assert_eq!(s.len(), k);
                }
                let mut sorted = states.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, states, "order/duplicates at ({n},{k})");
            }
        }
    }

    #[test]
    fn tables_match_known_distances() {
        let oracle = Oracle::default();

        let t = oracle.table(11, 3).unwrap();
        assert_eq!(t.pourability(&st(&[1, 4, 6])), Pourability::Exactly(3));
        assert_eq!(t.max_pourings(), 3);

        let t = oracle.table(3, 3).unwrap();
        assert_eq!(t.pourability(&st(&[1, 1, 1])), Pourability::Exactly(1));
        assert_eq!(t.max_pourings(), 1);

        let t = oracle.table(5, 3).unwrap();
        assert_eq!(t.max_pourings(), 1);

        let t = oracle.table(3, 2).unwrap();
        assert_eq!(t.pourability(&st(&[1, 2])), Pourability::NotPourable);
        assert!(t.has_unpourable());

        // Lookups canonicalize.
        let t = oracle.table(11, 3).unwrap();
        assert_eq!(t.pourability(&st(&[6, 1, 4])), Pourability::Exactly(3));
    }

    #[test]
    fn two_vessel_tables_agree_with_the_closed_form() {
        let oracle = Oracle::default();
        for n in 2..=120u64 {
            let t = oracle.table(n, 2).unwrap();
            for (s, p) in t.iter_all() {
                if s.has_zero() {
                    assert_eq!(p, Pourability::Exactly(0));
                    continue;
                }
                let expected = match crate::two_vessel::verdict(s[0], s[1]) {
                    crate::two_vessel::TwoVesselVerdict::Pourable { steps } => {
                        Pourability::Exactly(steps)
                    }
                    crate::two_vessel::TwoVesselVerdict::NotPourable => Pourability::NotPourable,
                };
                assert_eq!(p, expected, "at {s}");
            }
        }
    }

    #[test]
    fn distances_satisfy_the_one_step_recurrence() {
        // Every solvable state at distance d ≥ 1 has a child at distance
        // d − 1 and no child below that.
        let oracle = Oracle::default();
        for n in 1..=60u64 {
            let t = oracle.table(n, 3).unwrap();
            for (s, p) in t.iter_all() {
                let Pourability::Exactly(d) = p else { unreachable!() };
                if d == 0 {
                    assert!(s.has_zero());
                    continue;
                }
                let mut best_child = u32::MAX;
                for src in 0..3 {
                    for dst in 0..3 {
                        if let Ok(child) = pour(&s, src, dst) {
                            if let Pourability::Exactly(cd) = t.pourability(&child) {
                                best_child = best_child.min(cd);
                            }
                        }
                    }
                }
                assert_eq!(best_child, d - 1, "recurrence fails at {s}");
            }
        }
    }

    /// Forward BFS from a single state, fully independent of the backward
    /// table construction.
    fn forward_distance(start: &State) -> Option<u32> {
        use std::collections::HashSet;
        if start.has_zero() {
            return Some(0);
        }
        let start = start.canonicalize();
        let mut seen: HashSet<State> = HashSet::new();
        let mut frontier = vec![start.clone()];
        seen.insert(start);
        let k = frontier[0].len();
        for dist in 1..=64u32 {
            let mut next = Vec::new();
            for s in &frontier {
                for src in 0..k {
                    for dst in 0..k {
                        if let Ok(child) = pour(s, src, dst) {
                            let child = child.canonicalize();
                            if child.has_zero() {
                                return Some(dist);
                            }
                            if seen.insert(child.clone()) {
                                next.push(child);
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                return None;
            }
            frontier = next;
        }
        None
    }

    #[test]
    fn backward_tables_agree_with_forward_search() {
        let oracle = Oracle::default();
        // Deterministic pseudo-random sampling over small slices for k = 3, 4.
        let mut x = 0x2545F4914F6CDD1Du64;
        let mut rand = move || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        for _ in 0..200 {
            let k = 3 + (rand() % 2) as usize;
            let n = 2 + rand() % 59;
            let t = oracle.table(n, k).unwrap();
            let states: Vec<State> = enumerate_states(n, k).collect();
            let s = &states[(rand() % states.len() as u64) as usize];
            let expected = forward_distance(s);
            assert_eq!(t.pourability(s).steps(), expected, "disagreement at {s}");
        }
    }

    #[test]
    fn small_g_and_h_values_are_exact() {
        let oracle = Oracle::default();

        let g1 = oracle.compute_g(1, 3).unwrap();
        assert_eq!((g1.value, g1.exact), (3, true));
        assert_eq!(g1.witness, st(&[1, 1, 1]));

        assert_eq!(oracle.compute_g(2, 3).unwrap().value, 6);
        assert_eq!(oracle.compute_g(3, 3).unwrap().value, 11);
        assert_eq!(oracle.compute_g(1, 5).unwrap().value, 5);

        let gp = oracle.compute_g_prime(1, 3, 100).unwrap();
        assert_eq!((gp.value, gp.exact), (3, true));

        let hp = oracle.compute_h_prime(1, 3, 100).unwrap();
        assert_eq!((hp.value, hp.exact), (5, true));

        let h1 = oracle.compute_h(1, 3, Oracle::conclusive_h_cap(1)).unwrap();
        assert_eq!((h1.value, h1.exact), (5, true));

        let h3 = oracle.compute_h(3, 3, Oracle::conclusive_h_cap(3)).unwrap();
        assert_eq!((h3.value, h3.exact), (20, true));

        // With a short cap the result is only a bound.
        let h1_capped = oracle.compute_h(1, 3, 4).unwrap();
        assert!(!h1_capped.exact);
    }

    #[test]
    fn witnesses_have_the_defining_property() {
        let oracle = Oracle::default();
        for steps in 1..=4u32 {
            let g = oracle.compute_g(steps, 3).unwrap();
            assert_eq!(g.witness.total(), g.value);
            let t = oracle.table(g.value, 3).unwrap();
            match t.pourability(&g.witness) {
                Pourability::Exactly(d) => assert!(d >= steps),
                Pourability::NotPourable => unreachable!(),
            }
        }
    }

    #[test]
    fn requests_outside_the_caps_fail_cleanly() {
        let oracle = Oracle::new(Caps::uniform(50));
        assert_eq!(
            oracle.table(51, 3).unwrap_err(),
            OracleError::CapExceeded {
                n: 51,
                k: 3,
                cap: 50
            }
        );
        assert_eq!(oracle.table(0, 3).unwrap_err(), OracleError::ZeroTotal);
        assert_eq!(
            oracle.table(5, 1).unwrap_err(),
            OracleError::BadVesselCount(1)
        );
        // g(4, 3) = 15 > 10: a tiny cap makes the g-scan fail.
        let tiny = Oracle::new(Caps::uniform(10));
        assert!(matches!(
            tiny.compute_g(4, 3),
            Err(OracleError::CapExceeded { .. })
        ));
        assert!(matches!(
            tiny.compute_g_prime(9, 3, 10),
            Err(OracleError::NotFoundWithinCap { .. })
        ));
    }

    #[test]
    fn disk_cache_round_trips_and_survives_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let oracle = Oracle::default().with_cache_dir(dir.path().to_path_buf());

        let fresh = oracle.table(11, 3).unwrap();
        let reloaded = oracle.table(11, 3).unwrap();
        assert_eq!(fresh.max_pourings(), reloaded.max_pourings());
        for (s, p) in fresh.iter_all() {
            assert_eq!(p, reloaded.pourability(&s));
        }

        // Exactly one cache file, deterministic name.
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
        let path = entries[0].as_ref().unwrap().path();
        assert_eq!(
            path.file_name().unwrap().to_str().unwrap(),
            "pourtbl-k3-n11.bin"
        );

        // Corrupt the file: the oracle falls back to a rebuild.
        std::fs::write(&path, b"garbage").unwrap();
        let rebuilt = oracle.table(11, 3).unwrap();
        assert_eq!(rebuilt.max_pourings(), 3);
        assert_eq!(
            rebuilt.pourability(&st(&[1, 4, 6])),
            Pourability::Exactly(3)
        );
    }
}
