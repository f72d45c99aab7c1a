//! Recomputes one published fixture and prints its checks.

use hodge_join::fixtures::{verify_fixture, FIXTURE_IDS};

fn main() -> hodge_join::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "prop-5.4".to_string());
    println!("available: {}", FIXTURE_IDS.join(", "));
    let report = verify_fixture(&id)?;
    println!("{} passed = {} ({:.0} ms)", report.id, report.passed, report.elapsed_ms);
    for c in &report.checks {
        println!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
    }
    Ok(())
}
