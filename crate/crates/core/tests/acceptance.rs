//! Reproduction criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::ExitCode;

use duke_bounds::optimizer::OptimConfig;
use duke_bounds::reproduce::run_all;
use duke_bounds::specfun::EvalOptions;

fn main() -> ExitCode {
    let outcomes = run_all(&OptimConfig::default(), &EvalOptions::default());
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    println!(
        "acceptance: {} of {} criteria passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
