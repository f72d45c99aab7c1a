//! Parses a problem file and runs its tasks, printing one JSON line per task.

use hodge_join::problem::Problem;
use hodge_join::report::run_all;

fn main() -> hodge_join::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/problems/fermat_cubic.problem").to_string());
    let src = std::fs::read_to_string(&path).map_err(|e| hodge_join::Error::Io(e.to_string()))?;
    let problem = Problem::parse(&src)?;
    println!("{} cycles, {} tasks", problem.cycles.len(), problem.tasks.len());
    for report in run_all(&problem, true) {
        println!("{}", report.to_json_line());
    }
    Ok(())
}
