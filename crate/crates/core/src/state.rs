//! The store, the search state that owns it, and the logical byte model.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::domain::{Domain, Update, VarId, Wipeout};
use crate::error::{Error, Result};
use crate::propagation::{ChangeLog, PropId, PropagatorSet};

/// Mapping from every variable of a problem to its current domain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Store {
    domains: Vec<Domain>,
}

impl Store {
    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn domain(&self, var: VarId) -> &Domain {
        &self.domains[var.index()]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &Domain)> + '_ {
        self.domains.iter().enumerate().map(|(i, d)| (VarId::from(i), d))
    }

    pub fn all_fixed(&self) -> bool {
        self.domains.iter().all(Domain::is_fixed)
    }

    /// The assignment, if every variable is fixed.
    pub fn values(&self) -> Option<Vec<i64>> {
        self.domains.iter().map(Domain::value).collect()
    }

    /// First variable whose domain differs from `other`'s.
    pub fn first_difference(&self, other: &Store) -> Option<VarId> {
        self.domains
            .iter()
            .zip(&other.domains)
            .position(|(a, b)| a != b)
            .map(VarId::from)
            .or_else(|| {
                (self.domains.len() != other.domains.len())
                    .then(|| VarId::from(self.domains.len().min(other.domains.len())))
            })
    }

    pub(crate) fn domain_mut(&mut self, var: VarId) -> &mut Domain {
        &mut self.domains[var.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Active,
    Solved,
    Failed,
}

/// A store together with its propagators: one node of the search tree.
///
/// Propagator definitions are immutable once posted and shared between
/// copies; only domains, the pending queue and the bookkeeping fields are
/// duplicated.
#[derive(Debug)]
pub struct State {
    store: Store,
    props: Arc<PropagatorSet>,
    queue: VecDeque<PropId>,
    queued: Vec<bool>,
    status: Status,
    depth: usize,
}

impl Default for State {
    fn default() -> Self {
        State::new()
    }
}

impl State {
    pub fn new() -> State {
        State {
            store: Store::default(),
            props: Arc::new(PropagatorSet::default()),
            queue: VecDeque::new(),
            queued: Vec::new(),
            status: Status::Active,
            depth: 0,
        }
    }

    pub fn add_var(&mut self, lo: i64, hi: i64) -> Result<VarId> {
        let d = Domain::new(lo, hi)?;
        let id = VarId::from(self.store.domains.len());
        self.store.domains.push(d);
        Arc::make_mut(&mut self.props).ensure_vars(self.store.domains.len());
        Ok(id)
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn domain(&self, var: VarId) -> &Domain {
        self.store.domain(var)
    }

    pub fn var_count(&self) -> usize {
        self.store.len()
    }

    pub fn propagators(&self) -> &PropagatorSet {
        &self.props
    }

    pub fn propagator_count(&self) -> usize {
        self.props.len()
    }

    pub fn status(&self) -> Status {
        self.status
    }

    /// Exploration steps from the root.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Deep copy of an active state. The copy shares nothing mutable with
    /// the original.
    pub fn duplicate(&self) -> Result<State> {
        if self.status != Status::Active {
            return Err(Error::InactiveState(self.status));
        }
        Ok(self.copy())
    }

    pub(crate) fn copy(&self) -> State {
        State {
            store: self.store.clone(),
            props: Arc::clone(&self.props),
            queue: self.queue.clone(),
            queued: self.queued.clone(),
            status: self.status,
            depth: self.depth,
        }
    }

    pub fn bytes(&self, model: &ByteModel) -> u64 {
        model.state_bytes(self)
    }

    pub(crate) fn set_depth(&mut self, depth: usize) {
        self.depth = depth;
    }

    pub(crate) fn set_status(&mut self, status: Status) {
        self.status = status;
    }

    pub(crate) fn props_handle(&self) -> Arc<PropagatorSet> {
        Arc::clone(&self.props)
    }

    pub(crate) fn props_mut(&mut self) -> &mut PropagatorSet {
        Arc::make_mut(&mut self.props)
    }

    /// Direct overwrite used by restoration; bypasses logging and scheduling.
    pub(crate) fn overwrite_domain(&mut self, var: VarId, snapshot: &Domain) {
        self.store.domain_mut(var).overwrite(snapshot);
    }

    pub(crate) fn check_var(&self, var: VarId) -> Result<()> {
        if var.index() < self.store.len() {
            Ok(())
        } else {
            Err(Error::UnknownVariable(var))
        }
    }

    // --- scheduling -------------------------------------------------------

    pub(crate) fn schedule(&mut self, p: PropId) {
        let i = p.index();
        if i >= self.queued.len() {
            self.queued.resize(i + 1, false);
        }
        if !self.queued[i] {
            self.queued[i] = true;
            self.queue.push_back(p);
        }
    }

    /// Queues every propagator, so the next propagation re-checks the whole
    /// state.
    pub fn schedule_all(&mut self) {
        for i in 0..self.props.len() {
            self.schedule(PropId(i as u32));
        }
    }

    pub(crate) fn pop_queue(&mut self) -> Option<PropId> {
        let p = self.queue.pop_front()?;
        self.queued[p.index()] = false;
        Some(p)
    }

    pub(crate) fn clear_queue(&mut self) {
        while self.pop_queue().is_some() {}
    }

    pub(crate) fn queue_is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    fn notify(&mut self, var: VarId, source: Option<PropId>) {
        let props = Arc::clone(&self.props);
        for &p in props.subscribers(var) {
            if Some(p) != source {
                self.schedule(p);
            }
        }
    }

    // --- logged mutation --------------------------------------------------

    fn mutate(
        &mut self,
        var: VarId,
        log: &mut ChangeLog,
        source: Option<PropId>,
        f: impl FnOnce(&mut Domain) -> Update,
    ) -> Update {
        log.note_change(var, self.store.domain(var));
        let r = f(self.store.domain_mut(var));
        match r {
            Ok(true) => self.notify(var, source),
            Err(Wipeout) => self.status = Status::Failed,
            Ok(false) => {}
        }
        r
    }

    /// Removes `v` from `var`, logging the pre-image first.
    pub fn remove_value(&mut self, var: VarId, v: i64, log: &mut ChangeLog) -> Update {
        self.remove_from(var, v, log, None)
    }

    /// Intersects `var` with `[lo, hi]`, logging the pre-image first.
    pub fn tighten(&mut self, var: VarId, lo: i64, hi: i64, log: &mut ChangeLog) -> Update {
        self.tighten_from(var, lo, hi, log, None)
    }

    pub(crate) fn remove_from(
        &mut self,
        var: VarId,
        v: i64,
        log: &mut ChangeLog,
        source: Option<PropId>,
    ) -> Update {
        if !self.store.domain(var).contains(v) {
            return Ok(false);
        }
        self.mutate(var, log, source, |d| d.remove(v))
    }

    pub(crate) fn tighten_from(
        &mut self,
        var: VarId,
        lo: i64,
        hi: i64,
        log: &mut ChangeLog,
        source: Option<PropId>,
    ) -> Update {
        let d = self.store.domain(var);
        if d.is_empty() {
            return Err(Wipeout);
        }
        if lo <= d.min() && hi >= d.max() {
            return Ok(false);
        }
        self.mutate(var, log, source, |d| d.tighten(lo, hi))
    }
}

/// Deterministic logical memory model.
///
/// Every variable costs a fixed header plus a per-range cost, every
/// propagator a fixed cost. Chunks additionally pay a constant for their
/// choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ByteModel {
    pub var_header: u64,
    pub per_range: u64,
    pub per_propagator: u64,
    pub per_choice: u64,
}

impl Default for ByteModel {
    fn default() -> Self {
        ByteModel { var_header: 16, per_range: 8, per_propagator: 32, per_choice: 24 }
    }
}

impl ByteModel {
    /// Environment variable overriding the three state constants as
    /// `VAR,RANGE,PROPAGATOR` (an optional fourth field sets the choice cost).
    pub const ENV: &'static str = "BENCH_BYTE_MODEL";

    pub fn parse(spec: &str) -> Result<ByteModel> {
        let fields: Vec<u64> = spec
            .split(',')
            .map(|f| f.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Usage(format!("bad byte model `{spec}`: {e}")))?;
        let mut m = ByteModel::default();
        match fields.as_slice() {
            [v, r, p] => {
                m.var_header = *v;
                m.per_range = *r;
                m.per_propagator = *p;
            }
            [v, r, p, c] => {
                m = ByteModel { var_header: *v, per_range: *r, per_propagator: *p, per_choice: *c };
            }
            _ => return Err(Error::Usage(format!("bad byte model `{spec}`: expected 3 or 4 fields"))),
        }
        Ok(m)
    }

    pub fn from_env() -> Result<ByteModel> {
        match std::env::var(Self::ENV) {
            Ok(s) => ByteModel::parse(&s),
            Err(_) => Ok(ByteModel::default()),
        }
    }

    pub fn domain_bytes(&self, d: &Domain) -> u64 {
        self.var_header + self.per_range * d.range_count() as u64
    }

    pub fn store_bytes(&self, s: &Store) -> u64 {
        s.domains().iter().map(|d| self.domain_bytes(d)).sum()
    }

    pub fn state_bytes(&self, s: &State) -> u64 {
        self.store_bytes(s.store()) + self.per_propagator * s.propagator_count() as u64
    }
}
