//! Runs the acceptance criteria and prints one line per check.
//!
//!     cargo run --example validation_report -- 4 5 12

use bipolar_stokes::validation::{run_criterion, CRITERIA};

fn main() {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.0)) {
        println!("# {} {}", c.0, c.1);
        for r in run_criterion(c) {
            failed += usize::from(!r.pass);
            println!("{}", r.line());
        }
    }
    println!("{failed} failed");
}
