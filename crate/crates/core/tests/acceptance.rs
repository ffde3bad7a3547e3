//! Runs the validation suites and prints one line per acceptance criterion.
//! Exits non-zero if any criterion fails.

use orbitsolve::suites::{monotonicity, run_suite, SuiteReport};

fn summary(r: &SuiteReport) -> String {
    let failed: Vec<String> =
        r.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    if failed.is_empty() {
        format!("{} checks", r.checks.len())
    } else {
        failed.join("; ")
    }
}

fn main() {
    let criteria = [
        (1, "orbit counts", "orbit-counts"),
        (2, "worked instance", "worked-instance"),
        (3, "acyclicity equivalence", "acyclicity"),
        (4, "betweenness agreement", "betweenness"),
        (5, "equality reducts", "equality"),
        (6, "hypergraph actions", "example1"),
        (7, "unary locality", "unary-locality"),
    ];
    let mut all = true;
    let mut reports = Vec::new();
    for (num, title, suite) in criteria {
        let r = run_suite(suite).unwrap_or_else(|e| panic!("suite {suite}: {e}"));
        println!("criterion {num} ({title}): {} [{}]", if r.passed() { "PASS" } else { "FAIL" }, summary(&r));
        all &= r.passed();
        reports.push(r);
    }

    let mono = monotonicity(&reports);
    println!(
        "criterion 8 (minimality monotone and sound): {} [{}]",
        if mono.passed() { "PASS" } else { "FAIL" },
        summary(&mono)
    );
    all &= mono.passed();

    let mut differing = Vec::new();
    for r in &reports {
        let again = run_suite(&r.suite).expect("second run");
        let (a, b) = (serde_json::to_string(&r.to_json()).unwrap(), serde_json::to_string(&again.to_json()).unwrap());
        if a != b {
            differing.push(r.suite.clone());
        }
    }
    let m1 = serde_json::to_string(&mono.to_json()).unwrap();
    let m2 = serde_json::to_string(&monotonicity(&reports).to_json()).unwrap();
    if m1 != m2 {
        differing.push("monotonicity".into());
    }
    let det = differing.is_empty();
    println!(
        "criterion 9 (deterministic reports): {} [{}]",
        if det { "PASS" } else { "FAIL" },
        if det { "byte-identical reruns".to_string() } else { format!("differing: {}", differing.join(", ")) }
    );
    all &= det;

    if !all {
        std::process::exit(1);
    }
}
