//! Drives two engines over the same tree and compares them at every step.

use std::fmt;

use crate::domain::{Domain, VarId};
use crate::error::{Error, Result};
use crate::restoration::Strategy;
use crate::search::{Engine, Event, SearchMode};
use crate::state::State;

/// Default node budget for lockstep runs.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divergence {
    /// The engines took different steps.
    Event { step: u64, a: Event, b: Event },
    /// Both restored the node at `depth` but their stores differ at `var`.
    Store { restore: u64, depth: usize, var: VarId, a: Domain, b: Domain },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Event { step, a, b } => write!(f, "step {step}: a did {a:?}, b did {b:?}"),
            Divergence::Store { restore, depth, var, a, b } => {
                write!(f, "restore #{restore} at depth {depth}: {var} is {a} in a, {b} in b")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LockstepReport {
    pub a: Strategy,
    pub b: Strategy,
    pub steps: u64,
    pub restores: u64,
    /// Restores after which re-running every propagator on b's state still
    /// changed something. Only counted when requested.
    pub non_fix_point_restores: u64,
    pub divergence: Option<Divergence>,
}

impl LockstepReport {
    pub fn is_clean(&self) -> bool {
        self.divergence.is_none() && self.non_fix_point_restores == 0
    }
}

impl fmt::Display for LockstepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vs {}: {} steps, {} restores", self.a, self.b, self.steps, self.restores)?;
        if self.non_fix_point_restores > 0 {
            write!(f, ", {} restores not at a fix point", self.non_fix_point_restores)?;
        }
        match &self.divergence {
            None => write!(f, ", clean"),
            Some(d) => write!(f, ", DIVERGED at {d}"),
        }
    }
}

/// Options for [`lockstep_with`].
#[derive(Debug, Clone, Copy)]
pub struct LockstepOptions {
    pub node_budget: u64,
    /// Re-propagate every restored state of `b` and count changes.
    pub check_fix_point: bool,
}

impl Default for LockstepOptions {
    fn default() -> Self {
        LockstepOptions { node_budget: DEFAULT_NODE_BUDGET, check_fix_point: false }
    }
}

/// Runs `a` and `b` on `root` in lockstep.
pub fn verify_lockstep(root: &State, mode: SearchMode, a: Strategy, b: Strategy) -> Result<LockstepReport> {
    lockstep_with(root, mode, a, b, LockstepOptions::default())
}

pub fn lockstep_with(
    root: &State,
    mode: SearchMode,
    a: Strategy,
    b: Strategy,
    opts: LockstepOptions,
) -> Result<LockstepReport> {
    let ea = Engine::new(root.duplicate()?, a, mode);
    let eb = Engine::new(root.duplicate()?, b, mode);
    lockstep_engines(ea, eb, opts)
}

/// Lockstep over two prepared engines, e.g. one with a corrupted path.
pub fn lockstep_engines(mut ea: Engine, mut eb: Engine, opts: LockstepOptions) -> Result<LockstepReport> {
    let mut report = LockstepReport {
        a: ea.path().strategy(),
        b: eb.path().strategy(),
        steps: 0,
        restores: 0,
        non_fix_point_restores: 0,
        divergence: None,
    };
    loop {
        let (xa, xb) = (ea.step(), eb.step());
        let (xa, xb) = match (xa, xb) {
            (None, None) => return Ok(report),
            (Some(xa), Some(xb)) => (xa, xb),
            (xa, xb) => {
                report.divergence = Some(Divergence::Event {
                    step: report.steps,
                    a: xa.unwrap_or(Event::Exhausted),
                    b: xb.unwrap_or(Event::Exhausted),
                });
                return Ok(report);
            }
        };
        report.steps += 1;
        if xa != xb {
            report.divergence = Some(Divergence::Event { step: report.steps, a: xa, b: xb });
            return Ok(report);
        }
        if let Event::Restored { depth } = xa {
            report.restores += 1;
            let (sa, sb) = (ea.state().expect("restored"), eb.state().expect("restored"));
            if let Some(var) = sa.store().first_difference(sb.store()) {
                report.divergence = Some(Divergence::Store {
                    restore: report.restores,
                    depth,
                    var,
                    a: sa.domain(var).clone(),
                    b: sb.domain(var).clone(),
                });
                return Ok(report);
            }
            if opts.check_fix_point && !sb.is_fix_point() {
                report.non_fix_point_restores += 1;
            }
        }
        if ea.stats().nodes > opts.node_budget {
            return Err(Error::NodeBudget(opts.node_budget));
        }
    }
}
