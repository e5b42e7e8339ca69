//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Every identity is checked exactly (zero residual); the only tolerances
//! are the wall-clock budgets below.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use kostka_core::abf::abf_limit_check;
use kostka_core::affine_weyl::AffineWeight;
use kostka_core::audit::{AuditReport, Verdict};
use kostka_core::suites::{lemma_w_records, run_suite, SuiteOptions};
use kostka_core::virasoro::branching_via_kostka_limit;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ROUTES_BUDGET: Duration = Duration::from_secs(60);
const COINVARIANT_BUDGET: Duration = Duration::from_secs(300);
const COSET_BUDGET: Duration = Duration::from_secs(120);
const LEMMA_W_TRIPLES: usize = 100;
const LEMMA_W_MAX_N: i64 = 8;
const LEMMA_W_SEED: u64 = 20_240_917;
const SERIES_ORDER: usize = 15;
const ABF_ORDER: usize = 12;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn suite(name: &str) -> AuditReport {
    run_suite(name, &SuiteOptions::default()).unwrap_or_else(|e| panic!("suite {name}: {e}"))
}

fn summary(r: &AuditReport, elapsed: Duration) -> String {
    format!(
        "{} checked, {} hard failures, {} discrepancies, {:.2?}",
        r.checked, r.hard_failures, r.discrepancies, elapsed
    )
}

fn timed_suite(name: &str, budget: Duration) -> Outcome {
    let start = Instant::now();
    let r = suite(name);
    let elapsed = start.elapsed();
    outcome(r.all_hard_pass() && r.checked > 0 && elapsed <= budget, summary(&r, elapsed))
}

fn route_agreement() -> Outcome {
    timed_suite("routes", ROUTES_BUDGET)
}

fn coinvariant_oracle() -> Outcome {
    timed_suite("coinvariant", COINVARIANT_BUDGET)
}

fn verlinde_consistency() -> Outcome {
    timed_suite("verlinde", Duration::MAX)
}

fn reversal_and_degree() -> Outcome {
    timed_suite("reversal", Duration::MAX)
}

fn lemma_w() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(LEMMA_W_SEED);
    let mut failures = 0;
    let mut checked = 0;
    for _ in 0..LEMMA_W_TRIPLES {
        let w = AffineWeight::new(rng.random_range(-50..=50), rng.random_range(0..=20), rng.random_range(-50..=50));
        for r in lemma_w_records(w, LEMMA_W_MAX_N) {
            checked += 1;
            failures += usize::from(!r.passed());
        }
    }
    outcome(failures == 0, format!("{LEMMA_W_TRIPLES} triples, {checked} words, {failures} mismatches"))
}

fn coset_limit() -> Outcome {
    let start = Instant::now();
    let r = suite("coset");
    let elapsed = start.elapsed();
    let ising = branching_via_kostka_limit(0, 0, 1, 0, SERIES_ORDER).expect("Ising vacuum");
    let head = &ising.series.coefficients()[..7];
    let expect: Vec<BigInt> = [1, 0, 1, 1, 2, 2, 3].into_iter().map(BigInt::from).collect();
    let pass = r.all_hard_pass() && elapsed <= COSET_BUDGET && head == expect.as_slice();
    let shown: Vec<String> = head.iter().map(BigInt::to_string).collect();
    outcome(pass, format!("{}; (k,i,j,l)=(1,0,0,0) starts {}", summary(&r, elapsed), shown.join(",")))
}

fn fermionic_virasoro() -> Outcome {
    let start = Instant::now();
    let r = suite("fermionic-virasoro");
    let elapsed = start.elapsed();
    let printed = r.records.iter().find(|rec| {
        rec.check == "fermionic-printed" && rec.params["k"] == 1 && rec.params["j"] == 0 && rec.params["l"] == 0
    });
    let printed_nonzero = printed.is_some_and(|rec| rec.verdict == Verdict::Discrepancy && !rec.residual_polynomial.is_null());
    outcome(
        r.all_hard_pass() && printed_nonzero,
        format!("{}; printed route at (1,0,0) recorded nonzero: {printed_nonzero}", summary(&r, elapsed)),
    )
}

fn appendix() -> Outcome {
    let r = suite("abf");
    let printed: Vec<_> = r.records.iter().filter(|rec| rec.check == "abf-appendix-printed").collect();
    let j0_zero = printed.iter().filter(|rec| rec.params["j"] == 0).all(|rec| rec.verdict == Verdict::Pass);
    let j0_count = printed.iter().filter(|rec| rec.params["j"] == 0).count();
    let marked = printed.iter().any(|rec| {
        rec.params["k"] == 2 && rec.params["j"] == 1 && rec.params["l"] == 0 && rec.params["N"] == 2
            && rec.verdict == Verdict::Discrepancy
    });
    outcome(
        r.all_hard_pass() && j0_zero && j0_count > 0 && marked,
        format!(
            "{} checked, hard checks pass: {}; printed j=0 family zero over {j0_count} cases: {j0_zero}; (2,1,0,2) nonzero: {marked}",
            r.checked,
            r.all_hard_pass()
        ),
    )
}

fn abf_limit() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in 2..=4 {
        for b in 1..r {
            for a in 1..=r {
                checked += 1;
                match abf_limit_check(r, b, a, ABF_ORDER) {
                    Ok(rec) if rec.passed() => {}
                    _ => failures.push((r, b, a)),
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} labels through q^{ABF_ORDER}, failures {failures:?}"))
}

fn run_cli(args: &[&str], workers: &str, out: &Path) -> bool {
    let status = Command::new(env!("CARGO_BIN_EXE_kostka"))
        .env_remove("KOSTKA_CACHE_DIR")
        .args(["--workers", workers, "--output", out.to_str().unwrap()])
        .args(args)
        .stderr(std::process::Stdio::null())
        .status()
        .expect("spawn kostka");
    status.success()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let commands: [&[&str]; 4] = [
        &["table", "kostka", "--max-weight", "8", "--max-level", "3"],
        &["--format", "csv", "table", "verlinde"],
        &["--format", "csv", "table", "character", "--order", "20"],
        &["verify", "all"],
    ];
    let mut mismatches = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for (run, workers) in ["1", "4", "1", "0"].iter().enumerate() {
            let path = dir.path().join(format!("out-{i}-{run}"));
            if !run_cli(args, workers, &path) {
                mismatches.push(format!("{args:?} exited nonzero"));
            }
            outputs.push(std::fs::read(&path).unwrap_or_default());
        }
        if outputs.iter().any(|o| o != &outputs[0] || o.is_empty()) {
            mismatches.push(format!("{args:?} differs"));
        }
    }
    outcome(mismatches.is_empty(), format!("{} commands x 4 runs; {mismatches:?}", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("route agreement", route_agreement),
        ("coinvariant oracle", coinvariant_oracle),
        ("Verlinde consistency", verlinde_consistency),
        ("reversal and degree", reversal_and_degree),
        ("Weyl closed forms", lemma_w),
        ("coset limit", coset_limit),
        ("fermionic Virasoro", fermionic_virasoro),
        ("ABF polynomial identities", appendix),
        ("ABF to Virasoro limit", abf_limit),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!("criterion {:>2} {name}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
