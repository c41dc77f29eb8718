//! Acceptance criteria 1-12, one line per criterion. Exits non-zero if any
//! criterion fails.

use hgs::acceptance::{run_all, AcceptanceOptions};

fn main() {
    let results = run_all(&AcceptanceOptions::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
