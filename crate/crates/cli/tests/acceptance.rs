//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use vuf_cli::acceptance::{run_one, CRITERIA, SUITE_TIME_LIMIT};

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    for &(id, _) in CRITERIA {
        let outcome = run_one(id);
        println!("{}", outcome.line());
        if !outcome.passed {
            failed += 1;
        }
    }
    let total = start.elapsed().as_secs_f64();
    let in_time = total < SUITE_TIME_LIMIT;
    println!("{} total runtime {total:.1}s (limit {SUITE_TIME_LIMIT}s)", if in_time { "PASS" } else { "FAIL" });
    if !in_time {
        failed += 1;
    }
    println!("acceptance: {} of {} checks passed", CRITERIA.len() + 1 - failed, CRITERIA.len() + 1);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
