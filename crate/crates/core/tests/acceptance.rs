use std::process::ExitCode;

use reeb_spectrum::acceptance::{criterion_ids, run_criterion};

fn main() -> ExitCode {
    // `cargo test -- --list` style probes pass flags we do not use
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for id in criterion_ids() {
        let outcome = run_criterion(id).expect("known id");
        println!("{}", outcome.line());
        if !(outcome.passed && outcome.within_budget) {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criterion_ids().len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
