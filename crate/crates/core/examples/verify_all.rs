//! Runs every verification suite (or those named on the command line) and
//! prints one line per check.

use std::time::Instant;

use freeconv::verify::{run_suite, SUITES};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<&str> = if args.is_empty() { SUITES.to_vec() } else { args.iter().map(|s| s.as_str()).collect() };
    let mut failed = 0;
    for name in names {
        let start = Instant::now();
        let report = run_suite(name, None).expect("known suite");
        for c in &report.checks {
            let v = c.sup_error.map_or("n/a".to_string(), |v| format!("{v:.3e}"));
            let mark = if c.pass { "ok  " } else { "FAIL" };
            print!("{mark} {}/{} {v} (tol {:.0e})", report.suite, c.id, c.tol);
            if let Some(e) = &c.error {
                print!(" error: {e}");
            }
            println!();
        }
        failed += report.failures().count();
        println!("-- {name}: {:.1}s", start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} checks failed");
        std::process::exit(1);
    }
}
