//! Depth-first search parameterized by a restoration strategy.
//!
//! [`Engine`] runs the classic propagate / branch / restore loop one step
//! at a time so that two engines can be driven in lockstep; [`dfs`] simply
//! runs an engine to completion.

pub(crate) mod choice;

pub use choice::{branch, commit, Alternative, Choice, Committed};

use crate::domain::VarId;
use crate::error::{Error, Result};
use crate::propagation::{ChangeLog, Outcome};
use crate::restoration::{PathStack, RestoreStats, Strategy};
use crate::state::{ByteModel, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    FirstSolution,
    AllSolutions,
    /// Branch and bound minimizing `objective`.
    BestSolution { objective: VarId },
}

impl SearchMode {
    pub fn objective(&self) -> Option<VarId> {
        match *self {
            SearchMode::BestSolution { objective } => Some(objective),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SearchMode::FirstSolution => "first",
            SearchMode::AllSolutions => "all",
            SearchMode::BestSolution { .. } => "best",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Propagation outcomes: fix points, failures and solutions.
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
    /// Largest path stack size reached.
    pub max_depth: u64,
    pub propagator_executions: u64,
    /// Maximum of root bytes + chunk payloads + current state bytes.
    pub peak_payload_bytes: u64,
}

/// What one [`Engine::step`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// Reached a fix point at `depth`, branched and committed the first
    /// alternative.
    FixPoint { depth: usize, choice: Choice },
    Failure { depth: usize },
    Solution { depth: usize },
    /// The state of the open node at `depth` has been restored; its second
    /// alternative is committed on the next step.
    Restored { depth: usize },
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Propagate,
    Restore,
    Done,
}

#[derive(Debug)]
pub struct Engine {
    current: Option<State>,
    path: PathStack,
    log: ChangeLog,
    mode: SearchMode,
    model: ByteModel,
    incumbent: Option<i64>,
    stats: SearchStats,
    phase: Phase,
    pending_second: bool,
    solutions: Vec<Vec<i64>>,
}

impl Engine {
    /// `root` is the unpropagated problem state.
    pub fn new(root: State, strategy: Strategy, mode: SearchMode) -> Engine {
        Engine::with_byte_model(root, strategy, mode, ByteModel::default())
    }

    pub fn with_byte_model(root: State, strategy: Strategy, mode: SearchMode, model: ByteModel) -> Engine {
        Engine {
            current: Some(root),
            path: PathStack::new(strategy, model, mode.objective()),
            log: ChangeLog::new(strategy.log_mode()),
            mode,
            model,
            incumbent: None,
            stats: SearchStats::default(),
            phase: Phase::Propagate,
            pending_second: false,
            solutions: Vec::new(),
        }
    }

    pub fn state(&self) -> Option<&State> {
        self.current.as_ref()
    }

    pub fn path(&self) -> &PathStack {
        &self.path
    }

    pub fn path_mut(&mut self) -> &mut PathStack {
        &mut self.path
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    pub fn restore_stats(&self) -> RestoreStats {
        self.path.stats()
    }

    pub fn solutions(&self) -> &[Vec<i64>] {
        &self.solutions
    }

    pub fn incumbent(&self) -> Option<i64> {
        self.incumbent
    }

    pub fn is_done(&self) -> bool {
        self.phase == Phase::Done
    }

    fn sample_bytes(&mut self) {
        let current = self.current.as_ref().map_or(0, |s| self.model.state_bytes(s));
        let total = self.path.bytes() + current;
        self.stats.peak_payload_bytes = self.stats.peak_payload_bytes.max(total);
    }

    /// Performs one iteration of the search loop. `None` once finished.
    pub fn step(&mut self) -> Option<Event> {
        match self.phase {
            Phase::Done => None,
            Phase::Restore => Some(self.restore_step()),
            Phase::Propagate => Some(self.propagate_step()),
        }
    }

    fn restore_step(&mut self) -> Event {
        let s = self.current.take().expect("a state exists until search ends");
        match self.path.restore(s, &mut self.log) {
            None => {
                self.phase = Phase::Done;
                Event::Exhausted
            }
            Some(s) => {
                self.log.clear();
                let depth = s.depth();
                self.current = Some(s);
                self.pending_second = true;
                self.phase = Phase::Propagate;
                self.sample_bytes();
                Event::Restored { depth }
            }
        }
    }

    fn propagate_step(&mut self) -> Event {
        let s = self.current.as_mut().expect("a state exists until search ends");
        if self.pending_second {
            self.pending_second = false;
            let top = self.path.top_mut().expect("a restored node has its chunk on top");
            if let (Some(obj), Some(best)) = (self.mode.objective(), self.incumbent) {
                inject_bound(s, obj, best, &mut self.log);
                top.bound = Some(best - 1);
            }
            commit(s, &mut top.choice, Alternative::Second, &mut self.log)
                .expect("restored chunk has an open choice");
            s.set_depth(s.depth() + 1);
        }

        let r = s.propagate(&mut self.log);
        self.stats.nodes += 1;
        self.stats.propagator_executions += r.executions;
        let depth = s.depth();
        let event = match r.outcome {
            Outcome::Solved => {
                self.stats.solutions += 1;
                let values = s.store().values().expect("solved state is fully assigned");
                if let Some(obj) = self.mode.objective() {
                    self.incumbent = Some(values[obj.index()]);
                }
                self.solutions.push(values);
                self.phase = match self.mode {
                    SearchMode::FirstSolution => Phase::Done,
                    _ => Phase::Restore,
                };
                Event::Solution { depth }
            }
            Outcome::Inconsistency => {
                self.stats.failures += 1;
                self.phase = Phase::Restore;
                Event::Failure { depth }
            }
            Outcome::FixPoint => {
                if self.path.root().is_none() {
                    // root fix point: nothing precedes it, so its changes are
                    // not attributed to any chunk
                    self.path.set_root(s);
                    self.log.clear();
                }
                let choice = branch(s).ok().flatten().expect("an unsolved fix point has an unfixed variable");
                self.path.record(s, choice, &mut self.log);
                self.log.clear();
                self.stats.max_depth = self.stats.max_depth.max(self.path.len() as u64);
                let top = self.path.top_mut().expect("just pushed");
                commit(s, &mut top.choice, Alternative::First, &mut self.log).expect("fresh choice");
                s.set_depth(depth + 1);
                Event::FixPoint { depth, choice }
            }
        };
        self.sample_bytes();
        event
    }

    /// Runs to completion.
    pub fn run(&mut self) {
        while self.step().is_some() {}
    }

    /// Runs to completion unless more than `budget` nodes are explored.
    pub fn run_with_budget(&mut self, budget: u64) -> Result<()> {
        while self.step().is_some() {
            if self.stats.nodes > budget {
                return Err(Error::NodeBudget(budget));
            }
        }
        Ok(())
    }
}

/// Posts `objective <= incumbent - 1` on `s`.
pub fn inject_bound(s: &mut State, objective: VarId, incumbent: i64, log: &mut ChangeLog) {
    let _ = s.tighten(objective, i64::MIN / 4, incumbent - 1, log);
}

/// Solutions found and search statistics of a complete run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub solutions: Vec<Vec<i64>>,
    pub stats: SearchStats,
    pub restore: RestoreStats,
}

impl SearchResult {
    /// The last (for branch and bound: the best) solution.
    pub fn best(&self) -> Option<&[i64]> {
        self.solutions.last().map(Vec::as_slice)
    }
}

/// Explores the whole tree of `root` (or stops at the first solution).
pub fn dfs(root: State, strategy: Strategy, mode: SearchMode) -> SearchResult {
    dfs_with(root, strategy, mode, ByteModel::default())
}

pub fn dfs_with(root: State, strategy: Strategy, mode: SearchMode, model: ByteModel) -> SearchResult {
    let mut e = Engine::with_byte_model(root, strategy, mode, model);
    e.run();
    SearchResult { solutions: e.solutions, stats: e.stats, restore: e.path.stats() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::propagation::LogMode;

    #[test]
    fn unsatisfiable_cycle() {
        let mut s = State::new();
        let x = s.add_var(0, 5).unwrap();
        let y = s.add_var(0, 5).unwrap();
        s.post_linear_leq(&[1, -1], &[x, y], -1).unwrap();
        s.post_linear_leq(&[1, -1], &[y, x], -1).unwrap();
        let r = dfs(s, Strategy::Copy, SearchMode::AllSolutions);
        assert!(r.solutions.is_empty());
        assert!(r.stats.failures >= 1);
    }

    #[test]
    fn bound_injection() {
        let mut s = State::new();
        let x = s.add_var(0, 30).unwrap();
        let mut log = ChangeLog::new(LogMode::ChangedOnly);
        inject_bound(&mut s, x, 25, &mut log);
        assert_eq!(s.domain(x), &Domain::new(0, 24).unwrap());

        let mut s = State::new();
        let x = s.add_var(10, 30).unwrap();
        inject_bound(&mut s, x, 5, &mut log);
        assert_eq!(s.propagate(&mut log).outcome, Outcome::Inconsistency);
    }

    #[test]
    fn root_solution_and_root_failure() {
        let mut s = State::new();
        s.add_var(3, 3).unwrap();
        let r = dfs(s, Strategy::Trail, SearchMode::AllSolutions);
        assert_eq!(r.solutions, vec![vec![3]]);
        assert_eq!(r.stats.nodes, 1);

        let mut s = State::new();
        let x = s.add_var(1, 1).unwrap();
        let y = s.add_var(1, 1).unwrap();
        s.post_neq_offset(x, y, 0, 0).unwrap();
        let r = dfs(s, Strategy::Copy, SearchMode::FirstSolution);
        assert!(r.solutions.is_empty());
        assert_eq!((r.stats.nodes, r.stats.failures, r.stats.max_depth), (1, 1, 0));
    }

    #[test]
    fn tiny_enumeration_in_order() {
        let mut s = State::new();
        let x = s.add_var(0, 2).unwrap();
        let y = s.add_var(0, 2).unwrap();
        s.post_neq_offset(x, y, 0, 0).unwrap();
        let r = dfs(s, Strategy::Copy, SearchMode::AllSolutions);
        assert_eq!(r.solutions, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 2], vec![2, 0], vec![2, 1]]);
    }

    #[test]
    fn minimizes_objective() {
        // minimize x + y subject to x + y >= 5 (as -x - y <= -5), x != y
        let mut s = State::new();
        let x = s.add_var(0, 9).unwrap();
        let y = s.add_var(0, 9).unwrap();
        let z = s.add_var(0, 18).unwrap();
        s.post_linear_eq(&[1, 1, -1], &[x, y, z], 0).unwrap();
        s.post_linear_leq(&[-1, -1], &[x, y], -5).unwrap();
        s.post_neq_offset(x, y, 0, 0).unwrap();
        let r = dfs(s, Strategy::Trail, SearchMode::BestSolution { objective: z });
        assert_eq!(r.best().unwrap()[2], 5);
        let objs: Vec<i64> = r.solutions.iter().map(|v| v[2]).collect();
        assert!(objs.windows(2).all(|w| w[1] < w[0]), "strictly improving: {objs:?}");
    }
}
