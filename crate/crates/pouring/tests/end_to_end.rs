//! Cross-module checks on the public API: randomized step-budget
//! properties for every solver, and heuristic traces measured against the
//! exact tablebase.

use std::sync::OnceLock;

use pouring::four_vessel::{solve4_with, SolveOptions};
use pouring::oracle::{Caps, Oracle};
use pouring::state::State;
use pouring::three_vessel::solve3_frei;
use pouring::two_vessel;
use proptest::prelude::*;

fn shared_oracle() -> &'static Oracle {
    static ORACLE: OnceLock<Oracle> = OnceLock::new();
    ORACLE.get_or_init(|| Oracle::new(Caps::default()))
}

fn positive_state(k: usize, max: u64) -> impl Strategy<Value = State> {
    proptest::collection::vec(1..=max, k..=k).prop_map(|v| State::new(&v).unwrap())
}

fn simulate_two(mut a: u64, mut b: u64) -> Option<u32> {
    for steps in 0..=64u32 {
        if a == 0 || b == 0 {
            return Some(steps);
        }
        (a, b) = two_vessel::f_step(a, b);
    }
    None
}

proptest! {
    #[test]
    fn two_vessel_closed_form_matches_simulation(
        a in 1u64..1_000_000_000_000,
        b in 1u64..1_000_000_000_000,
    ) {
        prop_assert_eq!(two_vessel::verdict(a, b).steps(), simulate_two(a, b));
    }

    #[test]
    fn three_vessel_solver_stays_in_budget(s in positive_state(3, 1_000_000)) {
        let n = s.total();
        let trace = solve3_frei(&s).unwrap();
        prop_assert!(trace.verify().is_ok());
        prop_assert!(trace.current().has_zero());
        prop_assert!((trace.len() as f64) <= (n as f64).log2().powi(2));
    }

    #[test]
    fn four_vessel_solver_survives_instrumentation(s in positive_state(4, 250_000)) {
        let run = solve4_with(&s, SolveOptions { instrument: true }).unwrap();
        prop_assert!(run.final_state().has_zero());
        prop_assert!(run.trace().verify().is_ok());
        let n = s.total();
        prop_assert!((run.pour_count() as f64) <= (n as f64).log2().powi(2).max(1.0));
        // Once designated, the pool only ever pours out.
        if let Some(pool) = run.pool_index() {
            let designated_at = run.e_history()[0].0;
            for mv in &run.trace().moves()[designated_at..] {
                prop_assert!(mv.dst != pool, "pool vessel {pool} received a pour");
            }
        }
    }

    #[test]
    fn heuristic_traces_never_beat_the_tablebase(
        values in proptest::collection::vec(1u64..=20, 3..=4),
    ) {
        let s = State::new(&values).unwrap();
        let table = shared_oracle().table(s.total(), s.len()).unwrap();
        let optimal = table.pourability(&s).steps().expect("always solvable") as usize;
        let heuristic = match s.len() {
            3 => solve3_frei(&s).unwrap().len(),
            _ => solve4_with(&s, SolveOptions::default()).unwrap().pour_count(),
        };
        prop_assert!(
            heuristic >= optimal,
            "a {}-pour trace undercut the exact distance {optimal} at {s}",
            heuristic
        );
    }
}
