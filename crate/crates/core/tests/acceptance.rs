//! Runs every verification check once and prints one verdict per criterion.

use std::time::Instant;

use vcst_core::harness::verify::{run_all, CheckResult, FULL_RUN_BUDGET_MS};

const CRITERIA: [(u32, &str); 12] = [
    (1, "oracle-agreement"),
    (2, "packing-constants+partition-theta"),
    (3, "close-pair-property"),
    (4, "lp-relaxation-soundness"),
    (5, "scaled-cover-feasibility"),
    (6, "reroute-feasibility"),
    (7, "steiner-two-approx"),
    (8, "rounding-chain"),
    (9, "cds-lift"),
    (10, "activation-round-trip"),
    (11, "planar-primal-dual"),
    (12, "gadget-equalities"),
];

fn line(n: u32, name: &str, passed: bool, detail: &str) -> String {
    format!(
        "{} criterion {n:>2} {name}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    )
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let results = run_all();
    let total_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut failed = Vec::new();
    for (n, names) in CRITERIA {
        let checks: Vec<&CheckResult> = names
            .split('+')
            .map(|c| results.iter().find(|r| r.name == c).expect("check exists"))
            .collect();
        let passed = checks.iter().all(|c| c.passed);
        let detail = checks
            .iter()
            .map(|c| c.detail.as_str())
            .collect::<Vec<_>>()
            .join(" | ");
        println!("{}", line(n, names, passed, &detail));
        if !passed {
            failed.push(n);
        }
    }
    let in_budget = total_ms < FULL_RUN_BUDGET_MS;
    println!(
        "{}",
        line(
            13,
            "full-run-time",
            in_budget,
            &format!("{total_ms:.0} ms, budget {FULL_RUN_BUDGET_MS:.0} ms")
        )
    );
    if !in_budget {
        failed.push(13);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
