//! The seven acceptance criteria, one line each. Every check is exact
//! (equality of dimensions, ranks, coordinates or bytes), so the only
//! pinned tolerances are the wall-clock budgets below.
//!
//! Run with `cargo test -p parasimplex --test acceptance`; the process
//! exits nonzero when any criterion fails or overruns its budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use parasimplex::verify::{run_suite, Report, SuiteConfig};

const SEED: u64 = 1;
const PRIMES: [u32; 2] = [2, 5];

struct Criterion {
    label: &'static str,
    suite: &'static str,
    budget: Duration,
    /// Also rerun the suite and demand byte-identical untimed reports.
    rerun: bool,
}

const CRITERIA: [Criterion; 7] = [
    Criterion { label: "1 parasimplex algebra", suite: "paramap", budget: Duration::from_secs(30), rerun: false },
    Criterion { label: "2 counting", suite: "counting", budget: Duration::from_secs(5), rerun: false },
    Criterion { label: "3 cube calculus", suite: "cubes", budget: Duration::from_secs(120), rerun: false },
    Criterion { label: "4 D_{n,k} engine", suite: "snk", budget: Duration::from_secs(360), rerun: false },
    Criterion { label: "5 duality", suite: "duality", budget: Duration::from_secs(300), rerun: false },
    Criterion { label: "6 toda", suite: "toda", budget: Duration::from_secs(120), rerun: false },
    Criterion { label: "7 determinism and io", suite: "io", budget: Duration::from_secs(5), rerun: true },
];

fn config(suite: &str) -> SuiteConfig {
    SuiteConfig { seed: SEED, primes: PRIMES.to_vec(), n_max: 4, k_max: 4, ..SuiteConfig::named(suite) }
}

fn evaluate(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let run = || run_suite(&config(c.suite));
    let first = match run() {
        Ok(r) => r,
        Err(e) => return (false, format!("did not run: {e}")),
    };
    let mut notes = Vec::new();
    let mut passed = first.passed();
    if c.rerun {
        let same = run().is_ok_and(|second| untimed(&second) == untimed(&first));
        passed &= same;
        notes.push(if same { "rerun identical" } else { "rerun differs" }.to_owned());
    }
    let elapsed = start.elapsed();
    if elapsed > c.budget {
        passed = false;
        notes.push("over budget".into());
    }
    for f in first.failures() {
        notes.push(format!("{} failed: {}", f.id, f.detail));
    }
    let checks = first.records.len();
    let instances: usize = first.records.iter().map(|r| r.count).sum();
    let mut line = format!(
        "{checks} checks, {instances} instances, {:.1}s of {}s",
        elapsed.as_secs_f64(),
        c.budget.as_secs()
    );
    if !notes.is_empty() {
        line = format!("{line}; {}", notes.join("; "));
    }
    (passed, line)
}

fn untimed(r: &Report) -> String {
    r.without_timings().to_jsonl()
}

fn main() -> ExitCode {
    let mut all = true;
    for c in &CRITERIA {
        let (passed, line) = evaluate(c);
        all &= passed;
        println!("{} {:<24} [{}] {line}", if passed { "PASS" } else { "FAIL" }, c.label, c.suite);
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "some criteria fail" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
