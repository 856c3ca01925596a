//! Seeded randomized verification of every identity family.
//!
//! `cargo run --example verify_identities -- 200 7` runs 200 trials per suite
//! with seed 7.

use lamcalc::verify::{run, Suite};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);

    let report = run(&Suite::ALL, trials, seed);
    for s in &report.suites {
        let tag = if s.passed() { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}/{} trials", s.name, s.passes, s.trials);
        for c in &s.counterexamples {
            println!("  trial {} {}: {} vs {}", c.trial, c.check, c.lhs, c.rhs);
        }
        for n in &s.discrepancy_notes {
            println!("  note {}: {}", n.family, n.summary);
        }
    }
    if !report.all_assertable_pass() {
        std::process::exit(2);
    }
}
