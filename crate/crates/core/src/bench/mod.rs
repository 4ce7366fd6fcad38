//! Benchmark harness: timed runs, distance sweeps and lockstep checks,
//! reported as CSV rows.

mod lockstep;

pub use lockstep::{
    lockstep_engines, lockstep_with, verify_lockstep, Divergence, LockstepOptions, LockstepReport,
    DEFAULT_NODE_BUDGET,
};

use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::models::{self, ProblemSpec};
use crate::restoration::Strategy;
use crate::search::{dfs_with, SearchStats};
use crate::state::ByteModel;

/// Column order of every CSV this module writes.
pub const CSV_HEADER: [&str; 16] = [
    "model",
    "params",
    "strategy",
    "flavor",
    "d",
    "mode",
    "repeats",
    "time_ms_mean",
    "time_cv",
    "nodes",
    "failures",
    "depth",
    "propagations",
    "solutions",
    "peak_bytes",
    "verified",
];

/// Coefficient of variation above which timings are flagged.
pub const CV_WARNING: f64 = 0.02;

/// Distances swept when none are given.
pub const DEFAULT_DISTANCES: [u32; 9] = [1, 3, 5, 10, 20, 40, 80, 160, 320];

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Model with parameters, e.g. `queens:8`.
    pub model: String,
    pub strategy: Strategy,
    /// `first`, `all`, `best` or `default`.
    pub mode: String,
    pub repeats: u32,
    pub verify: bool,
    pub node_budget: u64,
    pub byte_model: ByteModel,
}

impl RunConfig {
    pub fn new(model: &str, strategy: Strategy) -> RunConfig {
        RunConfig {
            model: model.to_string(),
            strategy,
            mode: "default".into(),
            repeats: 1,
            verify: false,
            node_budget: DEFAULT_NODE_BUDGET,
            byte_model: ByteModel::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub model: String,
    pub params: String,
    pub strategy: Strategy,
    pub mode: &'static str,
    pub repeats: u32,
    pub time_ms_mean: f64,
    pub time_cv: f64,
    pub stats: SearchStats,
    /// Objective value (or last solution's objective) in best mode.
    pub objective: Option<i64>,
    /// `None` when verification was not requested.
    pub verified: Option<bool>,
    pub lockstep: Option<LockstepReport>,
}

impl RunResult {
    pub fn cv_warning(&self) -> bool {
        self.repeats > 1 && self.time_cv > CV_WARNING
    }

    pub fn csv_record(&self) -> Vec<String> {
        let verified = match self.verified {
            Some(v) => v.to_string(),
            None => String::new(),
        };
        let mut rec = config_columns(&self.model, &self.params, self.strategy, self.mode, self.repeats);
        rec.extend([
            format!("{:.3}", self.time_ms_mean),
            format!("{:.4}", self.time_cv),
            self.stats.nodes.to_string(),
            self.stats.failures.to_string(),
            self.stats.max_depth.to_string(),
            self.stats.propagator_executions.to_string(),
            self.stats.solutions.to_string(),
            self.stats.peak_payload_bytes.to_string(),
            verified,
        ]);
        rec
    }
}

fn config_columns(model: &str, params: &str, strategy: Strategy, mode: &str, repeats: u32) -> Vec<String> {
    vec![
        model.to_string(),
        params.to_string(),
        strategy.name().to_string(),
        strategy.flavor().map(|f| f.as_str().to_string()).unwrap_or_default(),
        strategy.distance().map(|d| d.to_string()).unwrap_or_default(),
        mode.to_string(),
        repeats.to_string(),
    ]
}

/// Mean and coefficient of variation (sample standard deviation over mean).
pub fn mean_cv(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    if samples.is_empty() {
        return (0.0, 0.0);
    }
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 || mean == 0.0 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt() / mean)
}

/// Runs `cfg.repeats` searches and aggregates them. Statistics come from
/// the first run; with `verify`, the strategy is also checked in lockstep
/// against copying and every solution against the model's checker.
pub fn run(cfg: &RunConfig) -> Result<RunResult> {
    if cfg.repeats == 0 {
        return Err(Error::Usage("repeats must be at least 1".into()));
    }
    let problem = models::build(&cfg.model)?;
    let mode = problem.mode(&cfg.mode)?;
    let mut times = Vec::with_capacity(cfg.repeats as usize);
    let mut first = None;
    for _ in 0..cfg.repeats {
        let root = problem.instantiate()?;
        let t = Instant::now();
        let r = dfs_with(root, cfg.strategy, mode, cfg.byte_model);
        times.push(t.elapsed().as_secs_f64() * 1e3);
        first.get_or_insert(r);
    }
    let r = first.expect("at least one repeat");
    let (time_ms_mean, time_cv) = mean_cv(&times);

    let (verified, lockstep) = if cfg.verify {
        let report = lockstep_with(
            &problem.instantiate()?,
            mode,
            Strategy::Copy,
            cfg.strategy,
            LockstepOptions { node_budget: cfg.node_budget, check_fix_point: false },
        )?;
        let ok = report.is_clean() && r.solutions.iter().all(|s| problem.check(s));
        (Some(ok), Some(report))
    } else {
        (None, None)
    };

    Ok(RunResult {
        model: problem.name.to_string(),
        params: problem.params_string(),
        strategy: cfg.strategy,
        mode: mode.as_str(),
        repeats: cfg.repeats,
        time_ms_mean,
        time_cv,
        objective: mode.objective().and_then(|o| r.best().map(|s| s[o.index()])),
        stats: r.stats,
        verified,
        lockstep,
    })
}

/// One sweep cell: a result or the error that stopped it.
#[derive(Debug)]
pub struct SweepCell {
    pub model: String,
    pub strategy: Strategy,
    pub outcome: Result<RunResult>,
}

impl SweepCell {
    pub fn csv_record(&self) -> Vec<String> {
        match &self.outcome {
            Ok(r) => r.csv_record(),
            Err(e) => {
                let (name, params) = self.model.split_once(':').unwrap_or((&self.model, ""));
                let mut rec = config_columns(name, &params.replace(',', ":"), self.strategy, "", 0);
                rec.extend(std::iter::repeat_n(String::new(), 8));
                rec.push(format!("error: {e}"));
                rec
            }
        }
    }
}

/// Strategy names crossed with distances. Names carrying no distance
/// (`copy`, `trail`, `recomp`, `recollect`) are still repeated once per
/// distance so that every (model, name, distance) cell exists.
pub fn sweep_strategies(names: &[String], distances: &[u32], flavor: crate::Flavor) -> Result<Vec<Strategy>> {
    let mut out = Vec::new();
    for name in names {
        for &d in distances {
            out.push(Strategy::parse(name, Some(d), flavor)?);
        }
    }
    Ok(out)
}

/// Runs every `(model, strategy)` pair, in order, collecting failures as
/// error cells. `base` supplies mode, repeats, verification and byte model.
pub fn sweep(models: &[String], strategies: &[Strategy], base: &RunConfig) -> Vec<SweepCell> {
    let mut cells = Vec::new();
    for model in models {
        for &strategy in strategies {
            let cfg = RunConfig { model: model.clone(), strategy, ..base.clone() };
            cells.push(SweepCell { model: model.clone(), strategy, outcome: run(&cfg) });
        }
    }
    cells
}

/// Writes the header and one row per record.
pub fn write_csv<W: Write>(out: W, records: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Builds a model and checks that its tree fits the lockstep budget before
/// comparing `a` against `b`.
pub fn verify(model: &str, mode: &str, a: Strategy, b: Strategy, opts: LockstepOptions) -> Result<LockstepReport> {
    let problem: ProblemSpec = models::build(model)?;
    let mode = problem.mode(mode)?;
    lockstep_with(&problem.instantiate()?, mode, a, b, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Distance, Flavor};

    #[test]
    fn statistics() {
        let (m, cv) = mean_cv(&[10.0, 10.0, 10.0]);
        assert_eq!((m, cv), (10.0, 0.0));
        let (m, cv) = mean_cv(&[9.0, 11.0]);
        assert_eq!(m, 10.0);
        assert!((cv - 2f64.sqrt() / 10.0).abs() < 1e-12);
        assert_eq!(mean_cv(&[4.0]), (4.0, 0.0));
    }

    #[test]
    fn run_queens_verified() {
        let mut cfg = RunConfig::new("queens:8", Strategy::Copy);
        cfg.mode = "all".into();
        cfg.verify = true;
        let r = run(&cfg).unwrap();
        assert_eq!(r.stats.solutions, 92);
        assert_eq!(r.verified, Some(true));
        let rec = r.csv_record();
        assert_eq!(rec.len(), CSV_HEADER.len());
        assert_eq!(&rec[..7], &["queens", "8", "copy", "", "", "all", "1"]);
    }

    #[test]
    fn sweep_shape_and_error_rows() {
        let names: Vec<String> = ["copy", "recomp-fixed", "recollect-fixed"].map(String::from).to_vec();
        let strategies = sweep_strategies(&names, &[1, 3, 5], Flavor::ChunkCentered).unwrap();
        let models = vec!["queens:5".to_string(), "nosuch:3".to_string()];
        let cells = sweep(&models, &strategies, &RunConfig::new("", Strategy::Copy));
        assert_eq!(cells.len(), 18);
        assert!(cells[..9].iter().all(|c| c.outcome.is_ok()));
        let err = cells[9].csv_record();
        assert_eq!(err.len(), CSV_HEADER.len());
        assert!(err[15].starts_with("error:"));
        // d = 1 recomputation explores the same tree as copying
        let copy = cells[0].outcome.as_ref().unwrap();
        let recomp = cells[3].outcome.as_ref().unwrap();
        assert_eq!(recomp.strategy.distance(), Some(Distance::Finite(1)));
        assert_eq!(
            (copy.stats.nodes, copy.stats.failures, copy.stats.max_depth),
            (recomp.stats.nodes, recomp.stats.failures, recomp.stats.max_depth)
        );
    }

    #[test]
    fn csv_header_is_stable() {
        let mut buf = Vec::new();
        write_csv(&mut buf, Vec::new()).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "model,params,strategy,flavor,d,mode,repeats,time_ms_mean,time_cv,nodes,failures,depth,propagations,solutions,peak_bytes,verified\n"
        );
    }
}
