//! One line per acceptance criterion; exits nonzero if any fails.
//! `cargo test --test acceptance -- 9 10` runs a subset.

use std::process::ExitCode;

use cyclic_orders::acceptance::{criterion_count, run_criterion};

fn main() -> ExitCode {
    let picked: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<u32> = if picked.is_empty() {
        (1..=criterion_count() as u32).collect()
    } else {
        picked
    };
    let mut failed = 0;
    for id in ids {
        let Some(r) = run_criterion(id) else {
            println!("criterion {id:>2}: unknown");
            failed += 1;
            continue;
        };
        let mark = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {mark} [{:>7.3}s] {}: {}",
            r.id, r.seconds, r.title, r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
