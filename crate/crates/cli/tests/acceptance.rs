//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use riemcurv::scalar::rat;
use riemcurv::sphere::{t_power_in_tau, Curvature};
use riemcurv::verify::{run_suite, SuiteReport};
use riemcurv::{ExactScalar, RElement};

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Result<(), String>,
}

fn suite(name: &str, order: u32) -> Result<(), String> {
    let report: SuiteReport = run_suite(name, order).map_err(|e| e.to_string())?;
    if report.checks.is_empty() {
        return Err(format!("suite {name} ran no checks"));
    }
    let first = report.failures().next().map(|c| {
        format!("{}: {}", c.label, c.detail.clone().unwrap_or_default())
    });
    first.map_or(Ok(()), Err)
}

fn lk_recursion() -> Result<(), String> {
    for k in 0..=10 {
        if RElement::lk_bar(k, 12).t_act() != RElement::lk_bar(k + 1, 12) {
            return Err(format!("t * lk_bar({k}) != lk_bar({})", k + 1));
        }
    }
    suite("lk-recursion", 12)
}

fn templates() -> Result<(), String> {
    let one = Curvature::Value(rat(1, 1));
    for (k, j, want) in [(1u32, 3u32, 6i64), (2, 2, 8)] {
        let got = t_power_in_tau(k, 12).evaluate(j, &one).map_err(|e| e.to_string())?;
        if got != ExactScalar::from_int(want) {
            return Err(format!("t^{k}(S^{j}) = {got}, expected {want}"));
        }
    }
    suite("sphere-templates", 12)
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("expand_lk_k1_order8.json", &["expand", "lk", "--k", "1", "--order", "8"]),
    ("expand_basis_k3_p1.json", &["expand", "basis", "--k", "3", "--p", "1"]),
    (
        "expand_lk_k0_tilde_delta_lambda1.json",
        &["expand", "lk", "--k", "0", "--basis", "tilde-delta", "--lambda", "1"],
    ),
    ("act_t_c00_order7.json", &["act", "t", "--on", "C:0,0", "--order", "7"]),
    (
        "act_t_lambda_td00_lambda1_order5.json",
        &["act", "t-lambda", "--on", "TD:0,0", "--lambda", "1", "--order", "5"],
    ),
    ("act_t_power0_c21.json", &["act", "t-power", "0", "--on", "C:2,1"]),
];

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_riemcurv"))
        .args(args)
        .args(["--format", "json"])
        .env_remove("RIEMCURV_ORDER")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn golden_determinism() -> Result<(), String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (file, args) in GOLDEN {
        let want = std::fs::read(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        if first != second {
            return Err(format!("{file}: two runs differ"));
        }
        if first != want {
            return Err(format!("{file}: output differs from the golden file"));
        }
    }
    Ok(())
}

fn criteria() -> Vec<Criterion> {
    let second = Some(Duration::from_secs(1));
    vec![
        Criterion { id: 1, name: "Lipschitz-Killing recursion t * lk_bar(k) = lk_bar(k+1)", limit: second, check: lk_recursion },
        Criterion { id: 2, name: "t in phi agrees with t in tau through phi in tau", limit: second, check: || suite("lemma-t-phi-tau", 12) },
        Criterion { id: 3, name: "t action transports t^k to t^(k+1) in the tau basis", limit: None, check: || suite("t-on-tau", 12) },
        Criterion { id: 4, name: "totally geodesic specialization inverts the pullback; delta table", limit: None, check: || suite("isometric-immersion", 12) },
        Criterion { id: 5, name: "Lipschitz-Killing elements are immersion invariant", limit: None, check: || suite("lk-invariance", 12) },
        Criterion { id: 6, name: "sphere templates against the tube-volume oracle", limit: second, check: templates },
        Criterion { id: 7, name: "hermitian basis change round trip and triangularity", limit: None, check: || suite("hermitian-basis-change", 12) },
        Criterion { id: 8, name: "Lipschitz-Killing elements in the TD basis by two routes", limit: None, check: || suite("lk-two-routes", 12) },
        Criterion { id: 9, name: "O/P closed forms and shifted-derivative intertwining", limit: None, check: || suite("o-p-transforms", 12) },
        Criterion { id: 10, name: "closed-form t_lambda equals the route through C", limit: Some(Duration::from_secs(30)), check: || suite("t-action-hermitian", 13) },
        Criterion { id: 11, name: "CLI golden JSON outputs are byte-identical across runs", limit: None, check: golden_determinism },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let mut result = (c.check)();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&result, c.limit) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:.2?}"));
            }
        }
        match result {
            Ok(()) => println!("PASS criterion {:>2}: {} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
