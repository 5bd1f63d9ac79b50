//! The acceptance gate: every bundled criterion must pass within its stated
//! time budget. One line is printed per criterion (visible with
//! `cargo test --test acceptance -- --nocapture`).

use geoforge::suite::{paper_suite, CRITERIA};

/// Per-criterion wall-clock budgets, milliseconds.
fn budget_ms(name: &str) -> u128 {
    match name {
        "tetrahedron-twist" => 1_000,
        "example1-orbits" => 1_000,
        "section5-families" => 30_000,
        "checker-equivalence" => 60_000,
        "twist-parabolic-oracle" => 30_000,
        "m22" => 30_000,
        "self-dual-simplex" => 10_000,
        "join-theorem" => 10_000,
        "streetlight" => 10_000,
        "search-pseudocode" => 30_000,
        other => panic!("unknown criterion {other}"),
    }
}

#[test]
fn acceptance_criteria() {
    let report = paper_suite(None);
    assert_eq!(report.entries.len(), CRITERIA.len());
    let mut failed = Vec::new();
    for entry in &report.entries {
        let budget = budget_ms(&entry.name);
        let verdict = if entry.pass && entry.millis < budget {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{verdict} {:<24} {:>6} ms (budget {:>5} ms)  {}",
            entry.name, entry.millis, budget, entry.detail
        );
        if !entry.pass {
            failed.push(format!("{}: {}", entry.name, entry.detail));
        } else if entry.millis >= budget {
            failed.push(format!(
                "{}: took {} ms, budget {} ms",
                entry.name, entry.millis, budget
            ));
        }
    }
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
