//! Run validation suites by name (all of them without arguments).

use orbitsolve::suites::{run_suite, SUITES};

fn main() -> orbitsolve::Result<()> {
    let picked: Vec<String> = std::env::args().skip(1).collect();
    for &name in SUITES.iter().filter(|s| picked.is_empty() || picked.iter().any(|p| p == *s)) {
        let report = run_suite(name)?;
        println!("{name}: {}", if report.passed() { "PASS" } else { "FAIL" });
        for c in &report.checks {
            println!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
    }
    Ok(())
}
