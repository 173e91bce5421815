// Running the built-in verification suites and reading their reports.
use indefinite_theta::harness::{run_suite, Suite};

fn main() {
    for suite in [Suite::Koszul, Suite::ModularCase2, Suite::Characteristics] {
        let report = run_suite(suite, None, 42).unwrap();
        println!("{}: {} ({} checks)", report.suite, if report.pass { "pass" } else { "FAIL" }, report.checks.len());
        for c in &report.checks {
            println!("  [{}] {}", if c.pass { "ok" } else { "!!" }, c.name);
        }
        assert!(report.pass);
    }
}
