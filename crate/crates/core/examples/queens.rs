//! Solves n-queens and draws the first few boards.
//!
//! ```text
//! cargo run --release --example queens -- 8
//! ```

use recollect::models;
use recollect::search::{dfs, SearchMode};
use recollect::Strategy;

fn main() -> recollect::Result<()> {
    let n: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let problem = models::queens(n)?;
    let r = dfs(problem.instantiate()?, Strategy::Trail, SearchMode::AllSolutions);

    println!("{n}-queens: {} solutions, {} nodes, {} failures", r.solutions.len(), r.stats.nodes, r.stats.failures);
    for sol in r.solutions.iter().take(2) {
        println!();
        for row in 0..n {
            let line: String = sol.iter().map(|&q| if q == row { " Q" } else { " ." }).collect();
            println!("{line}");
        }
    }
    Ok(())
}
