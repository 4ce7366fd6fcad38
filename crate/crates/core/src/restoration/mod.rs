//! Record/restore strategy pairs and the path stack they operate on.
//!
//! Every strategy shares the same skeleton: at each fix point the search
//! engine asks the [`PathStack`] to *record* a chunk for the node's choice,
//! and after a failure (or an emitted solution) asks it to *restore* the
//! deepest node whose choice is still open. What a chunk carries is what
//! distinguishes the strategies:
//!
//! | strategy     | chunk payload                                   | restore                          |
//! |--------------|-------------------------------------------------|----------------------------------|
//! | copy         | full state copy                                 | clone the copy                   |
//! | trail        | pre-images of variables changed on the edge     | undo bottom-up, in place         |
//! | recompute    | nothing, or a copy every `d` steps              | replay choices, propagate once   |
//! | recollect    | fix-point domains of changed variables (+copy)  | overlay records top-down         |

mod copy;
mod recollect;
mod recompute;
mod trail;

pub use trail::rollback;

use std::fmt;
use std::str::FromStr;

use crate::domain::{Domain, VarId};
use crate::error::{Error, Result};
use crate::propagation::{ChangeLog, LogMode};
use crate::search::Choice;
use crate::state::{ByteModel, State};

/// Spacing of full state copies along the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(d: u32) -> Result<Distance> {
        if d == 0 {
            Err(Error::Usage("copying distance must be positive".into()))
        } else {
            Ok(Distance::Finite(d))
        }
    }

    /// Whether a fix point at `depth` gets a full copy.
    pub fn is_copy_point(self, depth: usize) -> bool {
        match self {
            Distance::Finite(d) => depth.is_multiple_of(d as usize),
            Distance::Infinite => false,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Scan order used when overlaying recollection records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Flavor {
    /// One top-down pass over the chunks, skipping variables already rebuilt.
    #[default]
    ChunkCentered,
    /// For each variable, scan the chunks top-down for its newest record.
    VariableCentered,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::ChunkCentered => "chunk",
            Flavor::VariableCentered => "variable",
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "chunk" | "chunk-centered" => Ok(Flavor::ChunkCentered),
            "variable" | "var" | "variable-centered" => Ok(Flavor::VariableCentered),
            _ => Err(Error::Usage(format!("unknown recollection flavor `{s}` (known: chunk, variable)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Copy,
    Trail,
    Recompute { distance: Distance, adaptive: bool },
    Recollect { distance: Distance, adaptive: bool, flavor: Flavor },
}

impl Strategy {
    pub const NAMES: [&'static str; 8] = [
        "copy",
        "trail",
        "recomp",
        "recomp-fixed",
        "recomp-adaptive",
        "recollect",
        "recollect-fixed",
        "recollect-adaptive",
    ];

    /// Resolves a strategy name. `name` may carry the distance as a suffix
    /// (`recomp-fixed:8`); otherwise `distance` is used for the fixed and
    /// adaptive variants.
    pub fn parse(name: &str, distance: Option<u32>, flavor: Flavor) -> Result<Strategy> {
        let (base, suffix) = match name.split_once(':') {
            Some((b, d)) => {
                let d = d
                    .parse::<u32>()
                    .map_err(|_| Error::Usage(format!("bad copying distance in `{name}`")))?;
                (b, Some(d))
            }
            None => (name, None),
        };
        let d = suffix.or(distance);
        let dist = || -> Result<Distance> {
            match d {
                Some(d) => Distance::finite(d),
                None => Err(Error::Usage(format!("strategy `{base}` needs a copying distance"))),
            }
        };
        Ok(match base {
            "copy" => Strategy::Copy,
            "trail" => Strategy::Trail,
            "recomp" => Strategy::Recompute { distance: Distance::Infinite, adaptive: false },
            "recomp-fixed" => Strategy::Recompute { distance: dist()?, adaptive: false },
            "recomp-adaptive" => Strategy::Recompute { distance: dist()?, adaptive: true },
            "recollect" => Strategy::Recollect { distance: Distance::Infinite, adaptive: false, flavor },
            "recollect-fixed" => Strategy::Recollect { distance: dist()?, adaptive: false, flavor },
            "recollect-adaptive" => Strategy::Recollect { distance: dist()?, adaptive: true, flavor },
            _ => {
                return Err(Error::UnknownStrategy { name: name.to_string(), known: Strategy::NAMES.join(", ") })
            }
        })
    }

    /// Base name without distance, as accepted by [`Strategy::parse`].
    pub fn name(&self) -> &'static str {
        match *self {
            Strategy::Copy => "copy",
            Strategy::Trail => "trail",
            Strategy::Recompute { distance: Distance::Infinite, adaptive: false } => "recomp",
            Strategy::Recompute { adaptive: false, .. } => "recomp-fixed",
            Strategy::Recompute { adaptive: true, .. } => "recomp-adaptive",
            Strategy::Recollect { distance: Distance::Infinite, adaptive: false, .. } => "recollect",
            Strategy::Recollect { adaptive: false, .. } => "recollect-fixed",
            Strategy::Recollect { adaptive: true, .. } => "recollect-adaptive",
        }
    }

    pub fn distance(&self) -> Option<Distance> {
        match *self {
            Strategy::Recompute { distance, .. } | Strategy::Recollect { distance, .. } => Some(distance),
            _ => None,
        }
    }

    pub fn flavor(&self) -> Option<Flavor> {
        match *self {
            Strategy::Recollect { flavor, .. } => Some(flavor),
            _ => None,
        }
    }

    pub fn log_mode(&self) -> LogMode {
        match self {
            Strategy::Trail => LogMode::PreImages,
            _ => LogMode::ChangedOnly,
        }
    }

    /// The configurations compared throughout the test-suite: copy, trail,
    /// recomputation (full, fixed `d`, adaptive `d`) and recollection (full,
    /// fixed `d`, adaptive `d`) in both scan flavors.
    pub fn standard_set(d: u32) -> Vec<Strategy> {
        let distance = Distance::Finite(d);
        let mut v = vec![
            Strategy::Copy,
            Strategy::Trail,
            Strategy::Recompute { distance: Distance::Infinite, adaptive: false },
            Strategy::Recompute { distance, adaptive: false },
            Strategy::Recompute { distance, adaptive: true },
        ];
        for flavor in [Flavor::ChunkCentered, Flavor::VariableCentered] {
            v.push(Strategy::Recollect { distance: Distance::Infinite, adaptive: false, flavor });
            v.push(Strategy::Recollect { distance, adaptive: false, flavor });
            v.push(Strategy::Recollect { distance, adaptive: true, flavor });
        }
        v
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        if let Some(Distance::Finite(d)) = self.distance() {
            write!(f, ":{d}")?;
        }
        if let Some(fl) = self.flavor() {
            write!(f, "/{}", fl.as_str())?;
        }
        Ok(())
    }
}

/// Fix-point domains of the variables changed on the edge into a node,
/// sorted by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DomainRecord {
    entries: Vec<(VarId, Domain)>,
}

impl DomainRecord {
    pub fn capture(s: &State, changed: &[VarId]) -> DomainRecord {
        let mut vars = changed.to_vec();
        vars.sort_unstable();
        DomainRecord { entries: vars.into_iter().map(|v| (v, s.domain(v).clone())).collect() }
    }

    pub fn entries(&self) -> &[(VarId, Domain)] {
        &self.entries
    }

    pub fn get(&self, var: VarId) -> Option<&Domain> {
        self.entries.binary_search_by_key(&var, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replaces the snapshot of `var`. Intended for fault-injection tests.
    pub fn corrupt(&mut self, var: VarId, dom: Domain) -> bool {
        match self.entries.binary_search_by_key(&var, |e| e.0) {
            Ok(i) => {
                self.entries[i].1 = dom;
                true
            }
            Err(_) => false,
        }
    }
}

#[derive(Debug)]
pub enum Payload {
    Copy(State),
    Trail(Vec<(VarId, Domain)>),
    Recompute(Option<State>),
    Recollect { record: DomainRecord, copy: Option<State> },
}

impl Payload {
    /// The full state copy held by this payload, if any.
    pub fn state(&self) -> Option<&State> {
        match self {
            Payload::Copy(s) => Some(s),
            Payload::Recompute(c) | Payload::Recollect { copy: c, .. } => c.as_ref(),
            Payload::Trail(_) => None,
        }
    }

    fn set_copy(&mut self, s: State) {
        match self {
            Payload::Recompute(c) | Payload::Recollect { copy: c, .. } => *c = Some(s),
            Payload::Copy(_) | Payload::Trail(_) => unreachable!("copy and trail chunks have no optional copy"),
        }
    }
}

/// One node of the current path: its choice plus the strategy payload.
#[derive(Debug)]
pub struct Chunk {
    pub choice: Choice,
    pub payload: Payload,
    /// Objective bound posted together with the second alternative, replayed
    /// by recomputation.
    pub bound: Option<i64>,
    bytes: u64,
}

impl Chunk {
    pub fn bytes(&self) -> u64 {
        self.bytes
    }
}

/// Logical size of a chunk under `model`.
pub fn payload_bytes(chunk: &Chunk, model: &ByteModel) -> u64 {
    payload_bytes_of(&chunk.payload, model)
}

fn payload_bytes_of(payload: &Payload, model: &ByteModel) -> u64 {
    model.per_choice
        + match payload {
            Payload::Copy(s) => model.state_bytes(s),
            Payload::Trail(entries) => entries.iter().map(|(_, d)| model.domain_bytes(d)).sum(),
            Payload::Recompute(c) => c.as_ref().map_or(0, |s| model.state_bytes(s)),
            Payload::Recollect { record, copy } => {
                record.entries().iter().map(|(_, d)| model.domain_bytes(d)).sum::<u64>()
                    + copy.as_ref().map_or(0, |s| model.state_bytes(s))
            }
        }
}

/// Counters describing restoration work.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RestoreStats {
    pub restores: u64,
    /// Chunk lookups performed while overlaying recollection records.
    pub chunk_accesses: u64,
    /// Branch constraints re-committed by recomputation.
    pub recommits: u64,
    /// Copies installed at span midpoints by adaptive variants.
    pub adaptive_copies: u64,
    pub propagator_executions: u64,
}

/// Root copy plus the stack of chunks describing the current path.
///
/// Chunk `i` belongs to the fix point at depth `i`.
#[derive(Debug)]
pub struct PathStack {
    strategy: Strategy,
    model: ByteModel,
    objective: Option<VarId>,
    root: Option<State>,
    root_bytes: u64,
    chunks: Vec<Chunk>,
    chunk_bytes: u64,
    stamps: Vec<u32>,
    generation: u32,
    stats: RestoreStats,
}

impl PathStack {
    pub fn new(strategy: Strategy, model: ByteModel, objective: Option<VarId>) -> PathStack {
        PathStack {
            strategy,
            model,
            objective,
            root: None,
            root_bytes: 0,
            chunks: Vec::new(),
            chunk_bytes: 0,
            stamps: Vec::new(),
            generation: 0,
            stats: RestoreStats::default(),
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn root(&self) -> Option<&State> {
        self.root.as_ref()
    }

    /// Stores the root fix point. Search never mutates it.
    pub fn set_root(&mut self, s: &State) {
        self.root_bytes = self.model.state_bytes(s);
        self.root = Some(s.copy());
    }

    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    pub fn chunks(&self) -> &[Chunk] {
        &self.chunks
    }

    /// Mutable access for diagnostics and fault injection.
    pub fn chunks_mut(&mut self) -> &mut [Chunk] {
        &mut self.chunks
    }

    pub fn top(&self) -> Option<&Chunk> {
        self.chunks.last()
    }

    pub fn top_mut(&mut self) -> Option<&mut Chunk> {
        self.chunks.last_mut()
    }

    /// Root bytes plus every chunk's payload.
    pub fn bytes(&self) -> u64 {
        self.root_bytes + self.chunk_bytes
    }

    pub fn stats(&self) -> RestoreStats {
        self.stats
    }

    /// Builds and pushes the chunk for fix point `s` with the freshly
    /// generated `choice`. `log` holds the changes since the previous fix
    /// point.
    pub fn record(&mut self, s: &State, choice: Choice, log: &mut ChangeLog) {
        let depth = self.chunks.len();
        debug_assert_eq!(depth, s.depth());
        let payload = match self.strategy {
            Strategy::Copy => copy::record(s),
            Strategy::Trail => trail::record(log),
            Strategy::Recompute { distance, .. } => recompute::record(s, distance),
            Strategy::Recollect { distance, .. } => recollect::record(s, log, distance),
        };
        let bytes = payload_bytes_of(&payload, &self.model);
        self.chunk_bytes += bytes;
        self.chunks.push(Chunk { choice, payload, bound: None, bytes });
    }

    /// Pops closed chunks until the top one has an open choice. `false`
    /// when the stack runs empty.
    pub fn expose_open_choice(&mut self) -> bool {
        while let Some(top) = self.chunks.last() {
            if top.choice.is_open() {
                return true;
            }
            self.pop();
        }
        false
    }

    /// Restores the deepest node with an open choice, consuming the current
    /// state. `None` once the tree is exhausted.
    pub fn restore(&mut self, s: State, log: &mut ChangeLog) -> Option<State> {
        self.stats.restores += 1;
        match self.strategy {
            Strategy::Copy => copy::restore(self),
            Strategy::Trail => trail::restore(self, s, log),
            Strategy::Recompute { adaptive, .. } => recompute::restore(self, adaptive),
            Strategy::Recollect { adaptive, flavor, .. } => recollect::restore(self, adaptive, flavor),
        }
    }

    fn pop(&mut self) -> Option<Chunk> {
        let c = self.chunks.pop()?;
        self.chunk_bytes -= c.bytes;
        Some(c)
    }

    /// Deepest chunk index at or above `target` holding a copy, with a clone
    /// of that copy; falls back to the root (index 0).
    fn base(&self, target: usize) -> (usize, State) {
        for i in (0..=target).rev() {
            if let Some(s) = self.chunks[i].payload.state() {
                return (i, s.copy());
            }
        }
        let root = self.root.as_ref().expect("root copy is set before the first chunk");
        (0, root.copy())
    }

    fn install_copy(&mut self, index: usize, s: &State) {
        let chunk = &mut self.chunks[index];
        chunk.payload.set_copy(s.copy());
        let bytes = payload_bytes_of(&chunk.payload, &self.model);
        self.chunk_bytes = self.chunk_bytes - chunk.bytes + bytes;
        chunk.bytes = bytes;
        self.stats.adaptive_copies += 1;
    }

    fn next_generation(&mut self, vars: usize) -> u32 {
        if self.stamps.len() < vars {
            self.stamps.resize(vars, 0);
        }
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamps.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.generation
    }
}
