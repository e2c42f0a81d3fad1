//! One pass/fail line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use grrforge::acceptance::run_all;

fn main() -> ExitCode {
    let slow = std::env::args().any(|a| a == "--slow");
    let results = run_all(slow);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 && results.len() == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
