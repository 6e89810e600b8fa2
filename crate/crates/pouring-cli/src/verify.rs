//! Named verification suites behind `pour verify`.
//!
//! Each suite produces a list of checks; the command prints one line per
//! check (with a counterexample on failure) and exits 1 if any failed.

use serde::Serialize;

use pouring::four_vessel::{self, SolveOptions};
use pouring::oracle::{enumerate_states, Oracle};
use pouring::state::{state_gcd, State};
use pouring::{three_vessel, two_vessel};

use crate::{build_oracle, from_oracle, Cli, Failure, Format, Suite};

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Tracks an exhaustive sweep: case count plus the first counterexample.
struct Sweep {
    cases: u64,
    first_failure: Option<String>,
}

impl Sweep {
    fn new() -> Sweep {
        Sweep {
            cases: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    fn into_check(self, name: &str, scope: &str) -> Check {
        match self.first_failure {
            None => Check::new(name, true, format!("{} cases, {scope}", self.cases)),
            Some(counterexample) => Check::new(name, false, counterexample),
        }
    }
}

pub fn run_suite(cli: &Cli, suite: Suite, steps_max: Option<u32>) -> Result<u8, Failure> {
    let (name, checks) = match suite {
        Suite::Invariants => ("invariants", invariants(cli)),
        Suite::Bounds => ("bounds", bounds(cli, steps_max.unwrap_or(7))?),
        Suite::Conjecture => ("conjecture", conjecture(cli, steps_max.unwrap_or(6))?),
        Suite::Monotonicity => ("monotonicity", monotonicity(cli, steps_max.unwrap_or(6))?),
    };
    emit(cli.format, name, &checks);
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(if failed == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct Report<'a> {
    suite: &'static str,
    passed: usize,
    failed: usize,
    checks: &'a [Check],
}

fn emit(format: Format, suite: &'static str, checks: &[Check]) {
    let failed = checks.iter().filter(|c| !c.passed).count();
    let passed = checks.len() - failed;
    match format {
        Format::Json => {
            let report = Report {
                suite,
                passed,
                failed,
                checks,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        Format::Csv => {
            println!("suite,check,passed,detail");
            for check in checks {
                println!(
                    "{},{},{},{}",
                    suite,
                    csv_field(&check.name),
                    check.passed,
                    csv_field(&check.detail)
                );
            }
        }
        Format::Human => {
            for check in checks {
                let tag = if check.passed { "pass" } else { "FAIL" };
                println!("{tag}: {} — {}", check.name, check.detail);
            }
            println!("verify {suite}: {passed} passed, {failed} failed");
        }
    }
}

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_owned()
    }
}

fn positive_states(n: u64, k: usize) -> impl Iterator<Item = State> {
    enumerate_states(n, k).filter(|s| !s.has_zero())
}

// ---------------------------------------------------------------------------
// invariants

fn invariants(cli: &Cli) -> Vec<Check> {
    let triple_bound = cli.cap_n.unwrap_or(200).max(3);
    let quad_bound = triple_bound.min(120);
    let mut checks = Vec::new();

    // Two-vessel closed form against step-by-step simulation.
    let mut sweep = Sweep::new();
    for a in 1..=120u64 {
        for b in 1..=120u64 {
            let simulated = simulate_two(a, b);
            let closed_form = two_vessel::verdict(a, b).steps();
            sweep.record(closed_form == simulated, || {
                format!(
                    "({a}, {b}): closed form says {closed_form:?}, simulation says {simulated:?}"
                )
            });
        }
    }
    checks.push(sweep.into_check("two-vessel verdict matches simulation", "a, b <= 120"));

    // Two-vessel traces replay and hit the predicted length.
    let mut sweep = Sweep::new();
    for a in 1..=60u64 {
        for b in 1..=60u64 {
            let expected = two_vessel::verdict(a, b).steps();
            match two_vessel::solve2(a, b) {
                Ok(trace) => {
                    let ok = trace.verify().is_ok()
                        && trace.current().has_zero()
                        && Some(trace.len() as u32) == expected;
                    sweep.record(ok, || format!("solve2({a}, {b}) trace is inconsistent"));
                }
                Err(_) => sweep.record(expected.is_none(), || {
                    format!("solve2({a}, {b}) refused a pourable pair")
                }),
            }
        }
    }
    checks.push(sweep.into_check("two-vessel traces replay", "a, b <= 60"));

    // Round postconditions: the smallest role always shrinks on schedule.
    let mut janson_sweep = Sweep::new();
    let mut frei_sweep = Sweep::new();
    for n in 3..=triple_bound {
        for s in positive_states(n, 3) {
            let v = s.values();
            let (a, b) = (v[0], v[1]);
            let budget = (b / a).ilog2() as usize + 2;

            match three_vessel::janson_round(&s) {
                Ok(round) => {
                    let b_final = round.state.values()[1];
                    let ok = b_final == b % a
                        && b_final < a
                        && round.pour_count() <= budget
                        && round.trace.verify().is_ok();
                    janson_sweep.record(ok, || {
                        format!(
                            "janson postcondition failed at {s}: B ends {b_final}, {} pours",
                            round.pour_count()
                        )
                    });
                }
                Err(e) => janson_sweep.record(false, || format!("janson_round({s}) failed: {e}")),
            }

            match three_vessel::frei_round(&s) {
                Ok(round) => {
                    let rv = round.state.values();
                    let new_min = rv[0].min(rv[1]);
                    let ok = new_min * 2 <= a
                        && round.pour_count() <= budget
                        && round.trace.verify().is_ok();
                    frei_sweep.record(ok, || {
                        format!(
                            "frei postcondition failed at {s}: min ends {new_min}, {} pours",
                            round.pour_count()
                        )
                    });
                }
                Err(e) => frei_sweep.record(false, || format!("frei_round({s}) failed: {e}")),
            }
        }
    }
    let scope = format!("canonical positive triples, n <= {triple_bound}");
    checks.push(janson_sweep.into_check("janson round leaves B = b mod a within budget", &scope));
    checks.push(frei_sweep.into_check("frei round halves the minimum within budget", &scope));

    // Three-vessel solvers: termination and step budgets.
    let mut frei_solver = Sweep::new();
    let mut remainder_solver = Sweep::new();
    let mut pow2_solver = Sweep::new();
    for n in 3..=triple_bound {
        let log2n_sq = (n as f64).log2().powi(2);
        for s in positive_states(n, 3) {
            match three_vessel::solve3_frei(&s) {
                Ok(trace) => {
                    let ok = trace.verify().is_ok()
                        && trace.current().has_zero()
                        && (trace.len() as f64) <= log2n_sq;
                    frei_solver.record(ok, || {
                        format!("solve3_frei({s}) took {} pours (budget {log2n_sq:.2})", trace.len())
                    });
                }
                Err(e) => frei_solver.record(false, || format!("solve3_frei({s}) failed: {e}")),
            }

            match three_vessel::solve3_remainder(&s) {
                Ok(trace) => {
                    let ok = trace.verify().is_ok() && trace.current().has_zero();
                    remainder_solver
                        .record(ok, || format!("solve3_remainder({s}) trace is inconsistent"));
                }
                Err(e) => {
                    remainder_solver.record(false, || format!("solve3_remainder({s}) failed: {e}"))
                }
            }

            let gcd = state_gcd(&s).expect("positive states have a gcd");
            let ratio = n / gcd;
            if ratio.is_power_of_two() {
                match three_vessel::solve3_pow2(&s) {
                    Ok(trace) => {
                        let zeros = trace.current().values().iter().filter(|&&v| v == 0).count();
                        let ok = trace.verify().is_ok()
                            && trace.len() == ratio.ilog2() as usize
                            && zeros >= 2;
                        pow2_solver.record(ok, || {
                            format!(
                                "solve3_pow2({s}) took {} pours, expected exactly {}",
                                trace.len(),
                                ratio.ilog2()
                            )
                        });
                    }
                    Err(e) => pow2_solver.record(false, || format!("solve3_pow2({s}) failed: {e}")),
                }
            }
        }
    }
    checks.push(frei_solver.into_check("solve3_frei stays within (log2 n)^2 pours", &scope));
    checks.push(remainder_solver.into_check("solve3_remainder empties a vessel", &scope));
    checks.push(pow2_solver.into_check(
        "solve3_pow2 needs exactly log2(n/gcd) pours and empties two vessels",
        &scope,
    ));

    // Four-vessel solver with runtime instrumentation enabled.
    let mut sweep = Sweep::new();
    for n in 4..=quad_bound {
        let budget = (n as f64).log2().powi(2).max(1.0);
        for s in positive_states(n, 4) {
            match four_vessel::solve4_with(&s, SolveOptions { instrument: true }) {
                Ok(run) => {
                    let ok = run.final_state().has_zero()
                        && run.trace().verify().is_ok()
                        && (run.pour_count() as f64) <= budget;
                    sweep.record(ok, || {
                        format!("solve4({s}) took {} pours (budget {budget:.2})", run.pour_count())
                    });
                }
                Err(e) => sweep.record(false, || format!("solve4({s}) failed: {e}")),
            }
        }
    }
    checks.push(sweep.into_check(
        "solve4 empties a vessel with instrumentation on",
        &format!("canonical positive quadruples, n <= {quad_bound}"),
    ));

    checks
}

fn simulate_two(mut a: u64, mut b: u64) -> Option<u32> {
    for steps in 0..=64u32 {
        if a == 0 || b == 0 {
            return Some(steps);
        }
        let (next_a, next_b) = two_vessel::f_step(a, b);
        a = next_a;
        b = next_b;
    }
    None
}

// ---------------------------------------------------------------------------
// bounds

fn bounds(cli: &Cli, steps_max: u32) -> Result<Vec<Check>, Failure> {
    let oracle = build_oracle(cli);
    let mut checks = Vec::new();
    for steps in 1..=steps_max.max(1) {
        let record = oracle.compute_g(steps, 3).map_err(from_oracle)?;
        let threshold = 2f64.powf((steps as f64).sqrt());
        checks.push(Check::new(
            format!("2^sqrt({steps}) <= g({steps},3)"),
            record.value as f64 >= threshold,
            format!("g({steps},3) = {}, threshold {threshold:.3}", record.value),
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// conjecture

fn conjecture(cli: &Cli, steps_max: u32) -> Result<Vec<Check>, Failure> {
    let oracle = build_oracle(cli);
    let mut checks = Vec::new();
    for steps in 1..=steps_max.max(1) {
        let cap = Oracle::conclusive_h_cap(steps);
        let record = oracle.compute_h(steps, 3, cap).map_err(from_oracle)?;
        let expected = 5 * (1u64 << (steps - 1));
        checks.push(Check::new(
            format!("h({steps},3) == 5·2^{}", steps - 1),
            record.exact && record.value == expected,
            format!(
                "h({steps},3) = {} ({}), expected {expected}, cap {cap}",
                record.value,
                if record.exact { "exact" } else { "bound only" },
            ),
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// monotonicity

fn monotonicity(cli: &Cli, steps_max: u32) -> Result<Vec<Check>, Failure> {
    let oracle = build_oracle(cli);
    let mut checks = Vec::new();
    let n_max = steps_max.max(1);

    // g(N,3) for N = 1..=n_max, nondecreasing in N.
    let mut g3 = Vec::new();
    for steps in 1..=n_max {
        g3.push(oracle.compute_g(steps, 3).map_err(from_oracle)?.value);
    }
    checks.push(nondecreasing_check("g(N,3) nondecreasing in N", &g3));

    // Chain g <= g' <= h' <= h on conclusively capped rows.
    let chain_max = n_max.min(5);
    let mut h3 = Vec::new();
    for steps in 1..=chain_max {
        let cap = Oracle::conclusive_h_cap(steps);
        let g = g3[steps as usize - 1];
        let g_prime = oracle.compute_g_prime(steps, 3, cap).map_err(from_oracle)?;
        let h_prime = oracle.compute_h_prime(steps, 3, cap).map_err(from_oracle)?;
        let h = oracle.compute_h(steps, 3, cap).map_err(from_oracle)?;
        h3.push(h.value);
        let ok = g <= g_prime.value && g_prime.value <= h_prime.value && h_prime.value <= h.value;
        checks.push(Check::new(
            format!("chain g <= g' <= h' <= h at (N={steps}, k=3)"),
            ok,
            format!(
                "g = {g}, g' = {}, h' = {}, h = {}",
                g_prime.value, h_prime.value, h.value
            ),
        ));
    }
    checks.push(nondecreasing_check("h(N,3) nondecreasing in N", &h3));

    // g(N,4): nondecreasing, and the cross-k growth factor versus k=3.
    let quad_max = n_max.min(3);
    let mut g4 = Vec::new();
    for steps in 1..=quad_max {
        g4.push(oracle.compute_g(steps, 4).map_err(from_oracle)?.value);
    }
    checks.push(nondecreasing_check("g(N,4) nondecreasing in N", &g4));
    for steps in 1..=quad_max {
        let (low, high) = (g3[steps as usize - 1], g4[steps as usize - 1]);
        checks.push(Check::new(
            format!("(4/3)·g({steps},3) <= g({steps},4)"),
            4 * low <= 3 * high,
            format!("g({steps},3) = {low}, g({steps},4) = {high}"),
        ));
    }

    // Cross-k growth for k = 4..7 on the first two rows.
    for k in 4..=7usize {
        for steps in 1..=2u32 {
            let low = oracle.compute_g(steps, k).map_err(from_oracle)?.value;
            let high = oracle.compute_g(steps, k + 1).map_err(from_oracle)?.value;
            checks.push(Check::new(
                format!("(k+1)/k growth: g({steps},{k}) vs g({steps},{})", k + 1),
                (k as u64 + 1) * low <= k as u64 * high,
                format!("g({steps},{k}) = {low}, g({steps},{}) = {high}", k + 1),
            ));
        }
    }

    Ok(checks)
}

fn nondecreasing_check(name: &str, values: &[u64]) -> Check {
    let violation = values.windows(2).position(|w| w[0] > w[1]);
    match violation {
        None => Check::new(
            name,
            true,
            format!(
                "values {}",
                values
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ),
        Some(i) => Check::new(
            name,
            false,
            format!("row {} = {} exceeds row {} = {}", i + 1, values[i], i + 2, values[i + 1]),
        ),
    }
}
