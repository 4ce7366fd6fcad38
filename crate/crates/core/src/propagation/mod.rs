//! Fix-point propagation with change logging.

mod log;
mod propagators;

pub use log::{ChangeLog, LogMode};
pub use propagators::{PropId, Propagator, PropagatorSet, Relation};

use crate::state::{State, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Solved,
    Inconsistency,
    FixPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropagationResult {
    pub outcome: Outcome,
    /// Number of propagator runs.
    pub executions: u64,
}

impl State {
    /// Runs queued propagators (FIFO, deduplicated) until the queue drains
    /// or a domain is wiped out. Every mutation is routed through `log`.
    pub fn propagate(&mut self, log: &mut ChangeLog) -> PropagationResult {
        if self.status() == Status::Failed {
            self.clear_queue();
            return PropagationResult { outcome: Outcome::Inconsistency, executions: 0 };
        }
        let props = self.props_handle();
        let mut executions = 0;
        while let Some(p) = self.pop_queue() {
            executions += 1;
            if props.get(p).run(p, self, log).is_err() {
                self.set_status(Status::Failed);
                self.clear_queue();
                return PropagationResult { outcome: Outcome::Inconsistency, executions };
            }
        }
        debug_assert!(self.queue_is_empty());
        let outcome = if self.store().all_fixed() {
            self.set_status(Status::Solved);
            Outcome::Solved
        } else {
            self.set_status(Status::Active);
            Outcome::FixPoint
        };
        PropagationResult { outcome, executions }
    }

    /// Re-runs every propagator and reports whether the store is already a
    /// fix point (nothing changes and no inconsistency is found). Leaves
    /// `self` untouched.
    pub fn is_fix_point(&self) -> bool {
        let mut probe = self.copy();
        probe.schedule_all();
        let mut log = ChangeLog::new(LogMode::ChangedOnly);
        let r = probe.propagate(&mut log);
        r.outcome != Outcome::Inconsistency && log.is_empty()
    }
}
