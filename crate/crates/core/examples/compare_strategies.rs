//! Runs one model under every standard strategy configuration and prints
//! nodes, failures, depth, peak bytes and time side by side.
//!
//! ```text
//! cargo run --release --example compare_strategies -- golomb:7 8
//! ```

use std::time::Instant;

use recollect::models;
use recollect::search::dfs;
use recollect::Strategy;

fn main() -> recollect::Result<()> {
    let mut args = std::env::args().skip(1);
    let model = args.next().unwrap_or_else(|| "queens:8".into());
    let d: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(8);
    let p = models::build(&model)?;
    let mode = p.default_mode;
    println!("{p}, mode {}", mode.as_str());
    println!("{:<30} {:>9} {:>9} {:>5} {:>5} {:>11} {:>9}", "strategy", "nodes", "failures", "depth", "sols", "peak_bytes", "ms");
    for strategy in Strategy::standard_set(d) {
        let t = Instant::now();
        let r = dfs(p.instantiate()?, strategy, mode);
        let ms = t.elapsed().as_secs_f64() * 1e3;
        println!(
            "{:<30} {:>9} {:>9} {:>5} {:>5} {:>11} {:>9.1}",
            strategy.to_string(),
            r.stats.nodes,
            r.stats.failures,
            r.stats.max_depth,
            r.stats.solutions,
            r.stats.peak_payload_bytes,
            ms
        );
    }
    Ok(())
}
