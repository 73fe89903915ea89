//! Prints one line per acceptance criterion and fails if any criterion fails
//! for a reason other than a documented known failure.

use nhosc::verify::{run, Selection};

fn main() {
    let reports = run(&Selection::default());
    let mut hard = 0;
    for r in &reports {
        println!("{}", r.line());
        if !r.passed() && !r.known_failure_only() {
            hard += 1;
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let known = reports.iter().filter(|r| r.known_failure_only()).count();
    println!(
        "acceptance: {passed} passed, {known} failed on known bounds only, {hard} failed"
    );
    if hard > 0 {
        std::process::exit(1);
    }
}
