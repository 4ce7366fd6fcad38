//! Peak bytes and time of fixed recollection and fixed recomputation as the
//! copying distance grows, written as CSV.
//!
//! ```text
//! cargo run --release --example memory_sweep -- queens:20 > sweep.csv
//! ```

use recollect::bench::{self, RunConfig, DEFAULT_DISTANCES};
use recollect::{Flavor, Strategy};

fn main() -> recollect::Result<()> {
    let models: Vec<String> = std::env::args().skip(1).collect();
    let models = if models.is_empty() { vec!["golomb:8".to_string()] } else { models };
    let names = ["recollect-fixed".to_string(), "recomp-fixed".to_string()];
    let strategies = bench::sweep_strategies(&names, &DEFAULT_DISTANCES, Flavor::ChunkCentered)?;
    let cells = bench::sweep(&models, &strategies, &RunConfig::new("", Strategy::Copy));

    for c in &cells {
        if let Ok(r) = &c.outcome {
            eprintln!("{:<12} {:<22} {:>9} bytes {:>9.1} ms", c.model, c.strategy.to_string(), r.stats.peak_payload_bytes, r.time_ms_mean);
        }
    }
    bench::write_csv(std::io::stdout().lock(), cells.iter().map(|c| c.csv_record()))
}
