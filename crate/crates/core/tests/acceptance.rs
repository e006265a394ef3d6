use endohecke::acceptance::run_pinned;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = run_pinned(2024).expect("fixtures load");
    for r in &report.results {
        println!("{}", r.line());
    }
    println!("acceptance: {} of {} criteria passed", report.results.len() - report.failures(), report.results.len());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
