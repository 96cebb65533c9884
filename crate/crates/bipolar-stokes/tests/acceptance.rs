use std::process::ExitCode;
use std::time::Instant;

use bipolar_stokes::validation::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed_criteria = Vec::new();
    let mut total = 0;
    for c in &CRITERIA {
        let t = Instant::now();
        let results = run_criterion(c);
        for r in &results {
            println!("{}", r.line());
        }
        total += results.len();
        let bad = results.iter().filter(|r| !r.pass).count();
        let verdict = if bad == 0 { "PASS" } else { "FAIL" };
        println!(
            "== criterion {} ({}): {verdict}, {} checks, {bad} failed, {:.1}s",
            c.0,
            c.1,
            results.len(),
            t.elapsed().as_secs_f64()
        );
        if bad > 0 {
            failed_criteria.push(c.0);
        }
    }
    println!(
        "== {total} checks over {} criteria in {:.1}s; failing criteria: {:?}",
        CRITERIA.len(),
        start.elapsed().as_secs_f64(),
        failed_criteria
    );
    if failed_criteria.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
