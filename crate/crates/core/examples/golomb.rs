//! Branch and bound on Golomb rulers: every solution found is shorter than
//! the previous one, the last is optimal.
//!
//! ```text
//! cargo run --release --example golomb -- 9
//! ```

use recollect::models;
use recollect::search::dfs;
use recollect::{Distance, Flavor, Strategy};

fn main() -> recollect::Result<()> {
    let m: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let problem = models::golomb(m)?;
    let strategy = Strategy::Recollect { distance: Distance::Finite(8), adaptive: true, flavor: Flavor::ChunkCentered };
    let r = dfs(problem.instantiate()?, strategy, problem.default_mode);

    for sol in &r.solutions {
        let marks = &sol[..m as usize];
        println!("length {:>3}: {marks:?}", marks[m as usize - 1]);
    }
    println!(
        "{} nodes, {} failures, depth {}, {} restores ({} chunk accesses)",
        r.stats.nodes, r.stats.failures, r.stats.max_depth, r.restore.restores, r.restore.chunk_accesses
    );
    Ok(())
}
