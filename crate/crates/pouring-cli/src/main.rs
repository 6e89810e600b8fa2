//! `pour` — command-line interface to the pouring solvers and tables.
//!
//! Subcommands:
//!
//! * `solve` — empty a vessel from a given state and print the pour trace
//!   as JSON (always JSON; the other formats apply to tabular output).
//! * `table` — tabulate the extremal functions `g`, `h`, `g'`, `h'`.
//! * `verify` — run a named property suite and exit nonzero on failure.
//! * `instance` — print a state from one of the named hard families.
//! * `profile` — measure four-vessel pour counts over random states.
//!
//! Exit codes: 0 success, 1 verification failure (or internal invariant
//! breach), 2 invalid input, 3 cap exceeded.

mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pouring::four_vessel::{self, SolveOptions};
use pouring::instances;
use pouring::oracle::{Caps, Oracle, OracleError, PourabilityTable};
use pouring::state::{pour, state_gcd, PourTrace, State};
use pouring::{three_vessel, two_vessel};

#[derive(Parser)]
#[command(
    name = "pour",
    version,
    about = "Solvers, exact tables, and verifiers for the vessel-doubling pouring game"
)]
pub struct Cli {
    /// Override every per-vessel-count cap on oracle slice totals.
    #[arg(long, global = true, value_name = "N")]
    cap_n: Option<u64>,

    /// Size of the worker pool for parallel slice jobs (default: all cores).
    #[arg(long, global = true, value_name = "COUNT")]
    threads: Option<usize>,

    /// Directory for cached oracle slices (created on demand).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Seed for randomized sampling (profiling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Enable the four-vessel solver's runtime invariant assertions.
    #[arg(long, global = true)]
    instrument: bool,

    /// Output format for tabular results (traces are always JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Include wall-clock timings in trace output (breaks byte determinism).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Empty a vessel from STATE and print a JSON pour trace.
    Solve {
        /// Vessel values, whitespace- or comma-separated (e.g. "3 5" or 3,5).
        #[arg(required = true, value_name = "STATE")]
        state: Vec<String>,
        /// Solver to use; `auto` picks by vessel count and structure.
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
    },
    /// Tabulate an extremal function for N = 1..=steps-max at a fixed vessel count.
    Table {
        /// Which function to tabulate.
        #[arg(value_enum)]
        function: TableFunction,
        /// Largest pour-count parameter N to tabulate.
        #[arg(long, default_value_t = 5, value_name = "N")]
        steps_max: u32,
        /// Vessel count k.
        #[arg(long, default_value_t = 3, value_name = "K")]
        vessels: usize,
        /// Scan cap on the total (defaults: the slice cap; for h/hprime at
        /// k=3, the smallest cap that makes the row provably exact).
        #[arg(long, value_name = "N")]
        cap: Option<u64>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: Suite,
        /// Largest pour-count parameter N the suite scans (suite-specific default).
        #[arg(long, value_name = "N")]
        steps_max: Option<u32>,
    },
    /// Print a state from a named family, with its defining property.
    Instance {
        /// Which family.
        #[arg(value_enum)]
        family: Family,
        /// Vessel count k (g3 and g4lower families).
        #[arg(long, default_value_t = 5, value_name = "K")]
        vessels: usize,
        /// Number of root levels t (omega family).
        #[arg(long, default_value_t = 3, value_name = "T")]
        levels: usize,
        /// Total volume n (omega family).
        #[arg(long, value_name = "N")]
        total: Option<u64>,
        /// Also query the oracle for the exact pour count (subject to caps).
        #[arg(long)]
        check: bool,
    },
    /// Measure four-vessel pour counts over random states at given totals.
    Profile {
        /// Comma-separated totals to sample (each at least 4).
        #[arg(long, required = true, value_delimiter = ',', value_name = "N,N,...")]
        totals: Vec<u64>,
        /// Random states per total.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// Pick by vessel count: 2 → two, 3 → pow2 when n/gcd is a power of
    /// two else frei3, 4 → four, otherwise oracle.
    Auto,
    /// Two-vessel closed form (decides pourability exactly).
    Two,
    /// Three-vessel halving rounds, O((log n)^2) pours.
    Frei3,
    /// Three-vessel remainder strategy.
    Remainder3,
    /// Three-vessel exact solver for n/gcd a power of two.
    Pow2,
    /// Four-vessel strategy, O(log n · log log n) pours.
    Four,
    /// Exact minimal trace from the breadth-first tablebase (cap-limited).
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFunction {
    /// First total whose worst state needs at least N pours.
    G,
    /// Last total whose worst state needs at most N pours.
    H,
    /// First total whose worst state needs exactly N pours.
    Gprime,
    /// Last total whose worst state needs exactly N pours.
    Hprime,
}

impl TableFunction {
    fn name(self) -> &'static str {
        match self {
            TableFunction::G => "g",
            TableFunction::H => "h",
            TableFunction::Gprime => "gprime",
            TableFunction::Hprime => "hprime",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Solver postconditions and step budgets on exhaustive small sweeps.
    Invariants,
    /// Growth lower bound 2^sqrt(N) ≤ g(N,3) on computed rows.
    Bounds,
    /// h(N,3) = 5·2^(N−1), checked exactly with conclusive caps.
    Conjecture,
    /// Monotonicity in N and k, and the chain g ≤ g' ≤ h' ≤ h.
    Monotonicity,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// States (1, 4, 6, 9, …) needing exactly three pours at any k ≥ 3.
    G3,
    /// Prefix-sum family conjectured extremal for four-pour hardness.
    G4lower,
    /// Iterated-root family whose pour count grows with log n.
    Omega,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned plain-text tables.
    Human,
    /// One pretty-printed JSON document.
    Json,
    /// Comma-separated values with a header row.
    Csv,
}

/// A command failure carrying the exit code mandated for its class.
pub enum Failure {
    /// Malformed or out-of-contract input: exit 2.
    Input(String),
    /// The request needs totals beyond the configured caps: exit 3.
    CapExceeded(String),
    /// An internal invariant broke (never expected): exit 1.
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::CapExceeded(_) => 3,
            Failure::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::CapExceeded(m) | Failure::Internal(m) => m,
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn from_oracle(e: OracleError) -> Failure {
    match e {
        OracleError::CapExceeded { .. } | OracleError::NotFoundWithinCap { .. } => {
            Failure::CapExceeded(e.to_string())
        }
        other => Failure::Input(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // A later global-pool initialization is a no-op; first caller wins.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Solve { state, algorithm } => {
            cmd_solve(cli, state, *algorithm)?;
            Ok(0)
        }
        Command::Table {
            function,
            steps_max,
            vessels,
            cap,
        } => {
            cmd_table(cli, *function, *steps_max, *vessels, *cap)?;
            Ok(0)
        }
        Command::Verify { suite, steps_max } => verify::run_suite(cli, *suite, *steps_max),
        Command::Instance {
            family,
            vessels,
            levels,
            total,
            check,
        } => {
            cmd_instance(cli, *family, *vessels, *levels, *total, *check)?;
            Ok(0)
        }
        Command::Profile { totals, samples } => {
            cmd_profile(cli, totals, *samples)?;
            Ok(0)
        }
    }
}

pub fn build_oracle(cli: &Cli) -> Oracle {
    let caps = match cli.cap_n {
        Some(cap) => Caps::uniform(cap),
        None => Caps::default(),
    };
    let mut oracle = Oracle::new(caps);
    if let Some(dir) = &cli.cache_dir {
        oracle = oracle.with_cache_dir(dir.clone());
    }
    oracle
}

// ---------------------------------------------------------------------------
// solve

/// A replayable pour trace in a versioned JSON shape.
#[derive(Serialize)]
struct TraceDocument {
    schema: &'static str,
    solver: &'static str,
    initial: Vec<u64>,
    /// "solved" or "not-pourable".
    result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    explanation: Option<String>,
    steps: usize,
    moves: Vec<MoveDocument>,
    #[serde(rename = "final")]
    final_state: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    emptied_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<Diagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

#[derive(Serialize)]
struct MoveDocument {
    src: usize,
    dst: usize,
    state: Vec<u64>,
}

/// Extra detail attached by the four-vessel solver.
#[derive(Serialize)]
struct Diagnostics {
    pool_index: Option<usize>,
    /// `(pours so far, parity exponent)` after each exponent update.
    e_history: Vec<(usize, u32)>,
    phases: Vec<String>,
}

const TRACE_SCHEMA: &str = "pouring.trace/1";

impl TraceDocument {
    fn from_trace(solver: &'static str, trace: &PourTrace, diagnostics: Option<Diagnostics>) -> TraceDocument {
        debug_assert!(trace.verify().is_ok());
        let final_state: Vec<u64> = trace.current().values().to_vec();
        TraceDocument {
            schema: TRACE_SCHEMA,
            solver,
            initial: trace.initial().values().to_vec(),
            result: "solved",
            explanation: None,
            steps: trace.len(),
            moves: trace
                .moves()
                .iter()
                .zip(trace.states())
                .map(|(mv, state)| MoveDocument {
                    src: mv.src,
                    dst: mv.dst,
                    state: state.values().to_vec(),
                })
                .collect(),
            emptied_index: final_state.iter().position(|&v| v == 0),
            final_state,
            diagnostics,
            wall_time_ms: None,
        }
    }

    fn already_solved(state: &State) -> TraceDocument {
        let values = state.values().to_vec();
        TraceDocument {
            schema: TRACE_SCHEMA,
            solver: "none",
            initial: values.clone(),
            result: "solved",
            explanation: Some("a vessel is already empty; no pours are needed".to_owned()),
            steps: 0,
            moves: Vec::new(),
            emptied_index: values.iter().position(|&v| v == 0),
            final_state: values,
            diagnostics: None,
            wall_time_ms: None,
        }
    }

    fn not_pourable(solver: &'static str, state: &State, explanation: String) -> TraceDocument {
        let values = state.values().to_vec();
        TraceDocument {
            schema: TRACE_SCHEMA,
            solver,
            initial: values.clone(),
            result: "not-pourable",
            explanation: Some(explanation),
            steps: 0,
            moves: Vec::new(),
            emptied_index: None,
            final_state: values,
            diagnostics: None,
            wall_time_ms: None,
        }
    }
}

fn parse_state_args(args: &[String]) -> Result<Vec<u64>, Failure> {
    let joined = args.join(" ");
    let mut values = Vec::new();
    for token in joined.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        let value = token
            .parse::<u64>()
            .map_err(|_| Failure::Input(format!("invalid vessel value {token:?}")))?;
        values.push(value);
    }
    Ok(values)
}

/// The concrete solver `auto` resolves to.
enum Resolved {
    Two,
    Frei3,
    Remainder3,
    Pow2,
    Four,
    Oracle,
}

fn resolve_algorithm(algorithm: Algorithm, state: &State) -> Result<Resolved, Failure> {
    Ok(match algorithm {
        Algorithm::Auto => match state.len() {
            2 => Resolved::Two,
            3 => {
                let gcd = state_gcd(state).map_err(input_error)?;
                if (state.total() / gcd).is_power_of_two() {
                    Resolved::Pow2
                } else {
                    Resolved::Frei3
                }
            }
            4 => Resolved::Four,
            _ => Resolved::Oracle,
        },
        Algorithm::Two => {
            if state.len() != 2 {
                return Err(Failure::Input(format!(
                    "the two-vessel closed form needs exactly 2 vessels, got {}",
                    state.len()
                )));
            }
            Resolved::Two
        }
        Algorithm::Frei3 => Resolved::Frei3,
        Algorithm::Remainder3 => Resolved::Remainder3,
        Algorithm::Pow2 => Resolved::Pow2,
        Algorithm::Four => Resolved::Four,
        Algorithm::Oracle => Resolved::Oracle,
    })
}

fn cmd_solve(cli: &Cli, state_args: &[String], algorithm: Algorithm) -> Result<(), Failure> {
    let values = parse_state_args(state_args)?;
    let state = State::new(&values).map_err(input_error)?;
    let started = Instant::now();

    let mut document = if state.has_zero() {
        TraceDocument::already_solved(&state)
    } else {
        match resolve_algorithm(algorithm, &state)? {
            Resolved::Two => {
                let (a, b) = (state.values()[0], state.values()[1]);
                match two_vessel::solve2(a, b) {
                    Ok(trace) => TraceDocument::from_trace("two", &trace, None),
                    Err(not_pourable) => {
                        TraceDocument::not_pourable("two", &state, not_pourable.to_string())
                    }
                }
            }
            Resolved::Frei3 => {
                let trace = three_vessel::solve3_frei(&state).map_err(input_error)?;
                TraceDocument::from_trace("frei3", &trace, None)
            }
            Resolved::Remainder3 => {
                let trace = three_vessel::solve3_remainder(&state).map_err(input_error)?;
                TraceDocument::from_trace("remainder3", &trace, None)
            }
            Resolved::Pow2 => {
                let trace = three_vessel::solve3_pow2(&state).map_err(input_error)?;
                TraceDocument::from_trace("pow2", &trace, None)
            }
            Resolved::Four => {
                let options = SolveOptions {
                    instrument: cli.instrument,
                };
                let run = four_vessel::solve4_with(&state, options).map_err(|e| match e {
                    four_vessel::FourVesselError::PoolExhausted { .. } => {
                        Failure::Internal(e.to_string())
                    }
                    other => Failure::Input(other.to_string()),
                })?;
                let diagnostics = Diagnostics {
                    pool_index: run.pool_index(),
                    e_history: run.e_history().to_vec(),
                    phases: run.phase_log().iter().map(|p| p.to_string()).collect(),
                };
                TraceDocument::from_trace("four", run.trace(), Some(diagnostics))
            }
            Resolved::Oracle => {
                let oracle = build_oracle(cli);
                let table = oracle
                    .table(state.total(), state.len())
                    .map_err(from_oracle)?;
                match optimal_trace(&table, &state) {
                    Some(trace) => TraceDocument::from_trace("oracle", &trace, None),
                    None => TraceDocument::not_pourable(
                        "oracle",
                        &state,
                        "no sequence of pours can empty a vessel from this state".to_owned(),
                    ),
                }
            }
        }
    };

    if cli.timings {
        document.wall_time_ms = Some(started.elapsed().as_secs_f64() * 1000.0);
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&document).expect("trace document serializes")
    );
    Ok(())
}

/// Walks a shortest pour sequence by greedy descent over exact distances,
/// taking the lexicographically first `(src, dst)` that makes progress.
/// Returns `None` when the state cannot reach an empty vessel at all.
fn optimal_trace(table: &PourabilityTable, start: &State) -> Option<PourTrace> {
    let mut remaining = table.pourability(start).steps()?;
    let mut trace = PourTrace::new(start.clone());
    let k = start.len();
    while remaining > 0 {
        let current = trace.current().clone();
        let mut advanced = false;
        'search: for src in 0..k {
            for dst in 0..k {
                if src == dst {
                    continue;
                }
                let Ok(next) = pour(&current, src, dst) else {
                    continue;
                };
                if table.pourability(&next).steps() == Some(remaining - 1) {
                    trace.record(src, dst).expect("pour was just validated");
                    remaining -= 1;
                    advanced = true;
                    break 'search;
                }
            }
        }
        assert!(
            advanced,
            "distance table must admit a distance-decreasing pour"
        );
    }
    Some(trace)
}

// ---------------------------------------------------------------------------
// table

#[derive(Serialize)]
struct TableRow {
    function: &'static str,
    steps: u32,
    vessels: usize,
    value: u64,
    exact: bool,
    witness: Vec<u64>,
    cap: u64,
}

fn cmd_table(
    cli: &Cli,
    function: TableFunction,
    steps_max: u32,
    vessels: usize,
    cap: Option<u64>,
) -> Result<(), Failure> {
    if steps_max == 0 {
        return Err(Failure::Input("--steps-max must be at least 1".to_owned()));
    }
    let oracle = build_oracle(cli);
    let caps = oracle.caps();
    let mut rows = Vec::with_capacity(steps_max as usize);
    for steps in 1..=steps_max {
        // h and h' scan a fixed range; default to the smallest cap that
        // makes a k=3 row provably exact, else the configured slice cap.
        let exactness_cap = || {
            cap.unwrap_or_else(|| {
                if vessels == 3 {
                    Oracle::conclusive_h_cap(steps)
                } else {
                    caps.for_k(vessels)
                }
            })
        };
        let (record, cap_used) = match function {
            TableFunction::G => (oracle.compute_g(steps, vessels), caps.for_k(vessels)),
            TableFunction::Gprime => {
                let c = cap.unwrap_or_else(|| caps.for_k(vessels));
                (oracle.compute_g_prime(steps, vessels, c), c)
            }
            TableFunction::H => {
                let c = exactness_cap();
                (oracle.compute_h(steps, vessels, c), c)
            }
            TableFunction::Hprime => {
                let c = exactness_cap();
                (oracle.compute_h_prime(steps, vessels, c), c)
            }
        };
        let record = record.map_err(from_oracle)?;
        rows.push(TableRow {
            function: function.name(),
            steps,
            vessels,
            value: record.value,
            exact: record.exact,
            witness: record.witness.values().to_vec(),
            cap: cap_used,
        });
    }
    emit_table(cli.format, &rows);
    Ok(())
}

fn format_tuple(values: &[u64]) -> String {
    let inner = values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    format!("({inner})")
}

fn format_spaced(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit_table(format: Format, rows: &[TableRow]) {
    match format {
        Format::Json => print_json(rows),
        Format::Csv => {
            println!("function,steps,vessels,value,exact,witness,cap");
            for row in rows {
                println!(
                    "{},{},{},{},{},{},{}",
                    row.function,
                    row.steps,
                    row.vessels,
                    row.value,
                    row.exact,
                    format_spaced(&row.witness),
                    row.cap
                );
            }
        }
        Format::Human => {
            println!(
                "{:<9} {:>3} {:>3} {:>12}  {:<6} {:<28} {:>10}",
                "function", "N", "k", "value", "exact", "witness", "cap"
            );
            for row in rows {
                println!(
                    "{:<9} {:>3} {:>3} {:>12}  {:<6} {:<28} {:>10}",
                    row.function,
                    row.steps,
                    row.vessels,
                    row.value,
                    if row.exact { "yes" } else { "bound" },
                    format_tuple(&row.witness),
                    row.cap
                );
            }
        }
    }
}

fn print_json<T: Serialize + ?Sized>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

// ---------------------------------------------------------------------------
// instance

#[derive(Serialize)]
struct InstanceDocument {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    vessels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    requested_total: Option<u64>,
    state: Vec<u64>,
    total: u64,
    property: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_steps: Option<u32>,
}

fn cmd_instance(
    cli: &Cli,
    family: Family,
    vessels: usize,
    levels: usize,
    total: Option<u64>,
    check: bool,
) -> Result<(), Failure> {
    let mut document = match family {
        Family::G3 => {
            if vessels < 3 {
                return Err(Failure::Input(format!(
                    "the g3 family needs at least 3 vessels, got {vessels}"
                )));
            }
            let state = instances::g3_instance(vessels);
            InstanceDocument {
                family: "g3",
                vessels: Some(vessels),
                levels: None,
                requested_total: None,
                state: state.values().to_vec(),
                total: state.total(),
                property: "needs exactly 3 pours at every vessel count k >= 3",
                oracle_steps: None,
            }
        }
        Family::G4lower => {
            if vessels < 2 {
                return Err(Failure::Input(format!(
                    "the g4lower family needs at least 2 vessels, got {vessels}"
                )));
            }
            let state = instances::g4_lower_instance(vessels);
            InstanceDocument {
                family: "g4lower",
                vessels: Some(vessels),
                levels: None,
                requested_total: None,
                state: state.values().to_vec(),
                total: state.total(),
                property: "prefix-sum family conjectured extremal for four-pour hardness",
                oracle_steps: None,
            }
        }
        Family::Omega => {
            let n = total.ok_or_else(|| {
                Failure::Input("the omega family needs --total".to_owned())
            })?;
            if levels < 2 {
                return Err(Failure::Input(format!(
                    "the omega family needs at least 2 levels, got {levels}"
                )));
            }
            let state = instances::omega_instance(levels, n).map_err(input_error)?;
            InstanceDocument {
                family: "omega",
                vessels: Some(state.len()),
                levels: Some(levels),
                requested_total: Some(n),
                state: state.values().to_vec(),
                total: state.total(),
                property: "iterated-root family whose pour count grows with log n",
                oracle_steps: None,
            }
        }
    };

    if check {
        let oracle = build_oracle(cli);
        let state = State::new(&document.state).expect("family states are valid");
        let table = oracle
            .table(state.total(), state.len())
            .map_err(from_oracle)?;
        let steps = table.pourability(&state).steps().ok_or_else(|| {
            Failure::Internal("family state is unexpectedly not pourable".to_owned())
        })?;
        document.oracle_steps = Some(steps);
    }

    match cli.format {
        Format::Json => print_json(&document),
        Format::Csv => {
            println!("family,vessels,levels,requested_total,state,total,oracle_steps");
            println!(
                "{},{},{},{},{},{},{}",
                document.family,
                document.vessels.map_or(String::new(), |v| v.to_string()),
                document.levels.map_or(String::new(), |v| v.to_string()),
                document
                    .requested_total
                    .map_or(String::new(), |v| v.to_string()),
                format_spaced(&document.state),
                document.total,
                document
                    .oracle_steps
                    .map_or(String::new(), |v| v.to_string()),
            );
        }
        Format::Human => {
            println!("family: {}", document.family);
            if let Some(v) = document.vessels {
                println!("vessels: {v}");
            }
            if let Some(t) = document.levels {
                println!("levels: {t}");
            }
            println!("state: {}", format_tuple(&document.state));
            println!("total: {}", document.total);
            println!("property: {}", document.property);
            if let Some(steps) = document.oracle_steps {
                println!("oracle steps: {steps}");
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// profile

#[derive(Serialize)]
struct ProfileDocument {
    n: u64,
    samples: usize,
    max_pours: usize,
    mean_pours: f64,
}

fn cmd_profile(cli: &Cli, totals: &[u64], samples: usize) -> Result<(), Failure> {
    if samples == 0 {
        return Err(Failure::Input("--samples must be at least 1".to_owned()));
    }
    if let Some(&bad) = totals.iter().find(|&&n| n < 4) {
        return Err(Failure::Input(format!(
            "four-vessel profiling needs totals of at least 4, got {bad}"
        )));
    }
    let rows: Vec<ProfileDocument> = four_vessel::step_count_profile(totals, samples, cli.seed)
        .into_iter()
        .map(|row| ProfileDocument {
            n: row.n,
            samples: row.samples,
            max_pours: row.max_pours,
            mean_pours: row.mean_pours,
        })
        .collect();
    match cli.format {
        Format::Json => print_json(&rows),
        Format::Csv => {
            println!("n,samples,max_pours,mean_pours");
            for row in &rows {
                println!(
                    "{},{},{},{:.6}",
                    row.n, row.samples, row.max_pours, row.mean_pours
                );
            }
        }
        Format::Human => {
            println!(
                "{:>12} {:>8} {:>10} {:>12}",
                "n", "samples", "max_pours", "mean_pours"
            );
            for row in &rows {
                println!(
                    "{:>12} {:>8} {:>10} {:>12.2}",
                    row.n, row.samples, row.max_pours, row.mean_pours
                );
            }
        }
    }
    Ok(())
}
