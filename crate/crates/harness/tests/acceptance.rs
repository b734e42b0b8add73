//! One line per criterion; exits non-zero unless all sixteen pass.

use std::process::ExitCode;

use diagram_harness::{run_suite_with, Config, Status};

fn main() -> ExitCode {
    let config = Config { seed: 0, ..Config::default() };
    println!("seed {}", config.seed);
    let report = run_suite_with(&config, |e| println!("{}", e.line()));
    let failed: Vec<&str> = report.entries.iter().filter(|e| e.status != Status::Pass).map(|e| e.id.as_str()).collect();
    if report.entries.len() != 16 || !failed.is_empty() {
        println!("acceptance: {} entries, failing {failed:?}", report.entries.len());
        return ExitCode::FAILURE;
    }
    println!("acceptance: all 16 criteria pass");
    ExitCode::SUCCESS
}
