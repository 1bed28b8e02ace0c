//! Runs every acceptance criterion in order and prints one line per criterion.
//! Criteria run one at a time so the wall-clock budgets are meaningful.

use std::process::ExitCode;

use qaffine::harness::suite::{criteria, run_criterion};

// Every check compares exact elements of Q(q) or Q; nothing is rounded.
const TOLERANCE: &str = "tolerance 0 (exact arithmetic, residual must vanish identically)";

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::var("QAFFINE_CRITERIA")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect())
        .unwrap_or_default();
    let mut failed = 0;
    for c in criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let res = run_criterion(c);
        println!("{} [{TOLERANCE}]", res.line());
        if !res.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
