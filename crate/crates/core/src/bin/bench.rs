//! `bench`: timed runs, distance sweeps and lockstep verification.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 when a verification
//! finds a divergence.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use recollect::bench::{self, LockstepOptions, RunConfig, DEFAULT_DISTANCES, DEFAULT_NODE_BUDGET};
use recollect::{ByteModel, Error, Flavor, Strategy};

#[derive(Parser)]
#[command(name = "bench", about = "Benchmark restoration strategies", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one model with one strategy and print a CSV row.
    Run(RunArgs),
    /// Run every model x strategy x distance cell.
    Sweep(SweepArgs),
    /// Compare two strategies restore by restore.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// first, all, best, or default (the model's own mode).
    #[arg(long, default_value = "default")]
    mode: String,
    /// Recollection scan order: chunk or variable.
    #[arg(long, default_value = "chunk")]
    flavor: Flavor,
    /// Node limit for lockstep verification.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Model with parameters, e.g. queens:8 or langford:2,4.
    #[arg(long)]
    model: String,
    /// copy, trail, recomp, recomp-fixed, recomp-adaptive, recollect,
    /// recollect-fixed or recollect-adaptive.
    #[arg(long)]
    strategy: String,
    /// Copying distance for the fixed and adaptive strategies.
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, default_value_t = 1)]
    repeats: u32,
    /// Check against copying in lockstep and validate every solution.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, num_args = 1.., required = true)]
    models: Vec<String>,
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = ["recollect-fixed".to_string(), "recomp-fixed".to_string()])]
    strategies: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DISTANCES)]
    distances: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    repeats: u32,
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    model: String,
    #[arg(long, default_value = "copy")]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    d: Option<u32>,
    /// Also re-propagate every restored state of b and count changes.
    #[arg(long)]
    check_fix_point: bool,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Usage(String),
    Divergence,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn base_config(mode: &str, repeats: u32, verify: bool, node_budget: u64) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::new("", Strategy::Copy);
    cfg.mode = mode.to_string();
    cfg.repeats = repeats;
    cfg.verify = verify;
    cfg.node_budget = node_budget;
    cfg.byte_model = ByteModel::from_env()?;
    Ok(cfg)
}

fn warn_cv(r: &bench::RunResult) {
    if r.cv_warning() {
        eprintln!(
            "warning: {}:{} {}: time CV {:.1}% exceeds {:.0}%",
            r.model,
            r.params,
            r.strategy,
            r.time_cv * 100.0,
            bench::CV_WARNING * 100.0
        );
    }
}

fn cmd_run(a: RunArgs) -> Result<(), Failure> {
    let strategy = Strategy::parse(&a.strategy, a.d, a.common.flavor)?;
    let cfg = RunConfig {
        model: a.model,
        strategy,
        ..base_config(&a.common.mode, a.repeats, a.verify, a.common.node_budget)?
    };
    let r = bench::run(&cfg)?;
    warn_cv(&r);
    bench::write_csv(output(&a.common.out)?, [r.csv_record()])?;
    if let Some(report) = &r.lockstep {
        eprintln!("{report}");
    }
    match r.verified {
        Some(false) => Err(Failure::Divergence),
        _ => Ok(()),
    }
}

fn cmd_sweep(a: SweepArgs) -> Result<(), Failure> {
    if a.models.is_empty() {
        return Err(Failure::Usage("--models needs at least one model".into()));
    }
    let strategies = bench::sweep_strategies(&a.strategies, &a.distances, a.common.flavor)?;
    let base = base_config(&a.common.mode, a.repeats, a.verify, a.common.node_budget)?;
    let cells = bench::sweep(&a.models, &strategies, &base);
    let mut diverged = false;
    for c in &cells {
        match &c.outcome {
            Ok(r) => {
                warn_cv(r);
                diverged |= r.verified == Some(false);
            }
            Err(e) => eprintln!("error: {} {}: {e}", c.model, c.strategy),
        }
    }
    bench::write_csv(output(&a.common.out)?, cells.iter().map(|c| c.csv_record()))?;
    if diverged {
        Err(Failure::Divergence)
    } else {
        Ok(())
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let sa = Strategy::parse(&a.a, a.d, a.common.flavor)?;
    let sb = Strategy::parse(&a.b, a.d, a.common.flavor)?;
    let opts = LockstepOptions { node_budget: a.common.node_budget, check_fix_point: a.check_fix_point };
    let report = bench::verify(&a.model, &a.common.mode, sa, sb, opts)?;
    writeln!(output(&a.common.out)?, "{} {report}", a.model)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Divergence)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Divergence) => ExitCode::from(2),
    }
}
