use std::fmt;

use crate::domain::{Update, VarId};
use crate::error::{Error, Result};
use crate::propagation::ChangeLog;
use crate::state::{State, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    /// `var = pivot`
    First,
    /// `var != pivot`
    Second,
}

/// How far a choice has been explored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Committed {
    None,
    First,
    Both,
}

/// A binary choice `var = pivot` / `var != pivot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Choice {
    pub var: VarId,
    pub pivot: i64,
    pub committed: Committed,
}

impl Choice {
    pub fn new(var: VarId, pivot: i64) -> Choice {
        Choice { var, pivot, committed: Committed::None }
    }

    /// Open while an alternative remains uncommitted.
    pub fn is_open(&self) -> bool {
        self.committed != Committed::Both
    }

    /// The alternative that leads to the child currently on the path.
    pub fn taken(&self) -> Option<Alternative> {
        match self.committed {
            Committed::None => None,
            Committed::First => Some(Alternative::First),
            Committed::Both => Some(Alternative::Second),
        }
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} | {} != {}", self.var, self.pivot, self.var, self.pivot)
    }
}

/// Picks the lowest-indexed unfixed variable and its minimum value.
/// `None` when every variable is fixed.
pub fn branch(s: &State) -> Result<Option<Choice>> {
    if s.status() == Status::Failed {
        return Err(Error::InactiveState(Status::Failed));
    }
    Ok(s
        .store()
        .iter()
        .find(|(_, d)| !d.is_fixed())
        .map(|(v, d)| Choice::new(v, d.min())))
}

/// Commits `alt` of `choice` on `s` and advances the choice. A wipeout
/// leaves `s` failed; the next propagation reports it.
pub fn commit(s: &mut State, choice: &mut Choice, alt: Alternative, log: &mut ChangeLog) -> Result<()> {
    let next = match (alt, choice.committed) {
        (Alternative::First, Committed::None) => Committed::First,
        (Alternative::Second, Committed::First) => Committed::Both,
        _ => {
            return Err(Error::Usage(format!(
                "cannot commit {alt:?} alternative of a choice in state {:?}",
                choice.committed
            )))
        }
    };
    let _ = apply(s, choice.var, choice.pivot, alt, log);
    choice.committed = next;
    Ok(())
}

/// Applies the branch constraint without touching the choice's progress.
pub(crate) fn apply(s: &mut State, var: VarId, pivot: i64, alt: Alternative, log: &mut ChangeLog) -> Update {
    match alt {
        Alternative::First => s.tighten(var, pivot, pivot, log),
        Alternative::Second => s.remove_value(var, pivot, log),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::propagation::{LogMode, Outcome};

    fn store_xyz() -> (State, [VarId; 3]) {
        let mut s = State::new();
        let x = s.add_var(4, 4).unwrap();
        let y = s.add_var(2, 5).unwrap();
        let z = s.add_var(0, 9).unwrap();
        (s, [x, y, z])
    }

    #[test]
    fn branch_rule() {
        let (s, [_, y, _]) = store_xyz();
        assert_eq!(branch(&s).unwrap(), Some(Choice::new(y, 2)));

        let mut s = State::new();
        s.add_var(1, 1).unwrap();
        s.add_var(3, 3).unwrap();
        assert_eq!(branch(&s).unwrap(), None);
    }

    #[test]
    fn branch_on_failed_state_is_an_error() {
        let mut s = State::new();
        let x = s.add_var(1, 1).unwrap();
        let mut log = ChangeLog::default();
        let _ = s.remove_value(x, 1, &mut log);
        assert!(branch(&s).is_err());
    }

    #[test]
    fn commit_alternatives() {
        let (mut s, [_, y, _]) = store_xyz();
        let mut log = ChangeLog::new(LogMode::PreImages);
        let mut c = branch(&s).unwrap().unwrap();
        commit(&mut s, &mut c, Alternative::First, &mut log).unwrap();
        assert_eq!(s.domain(y), &Domain::singleton(2));
        assert_eq!(c.committed, Committed::First);
        assert_eq!(log.changed(), &[y]);

        let (mut s, [_, y, _]) = store_xyz();
        commit(&mut s, &mut c, Alternative::Second, &mut log).unwrap();
        assert_eq!(s.domain(y), &Domain::new(3, 5).unwrap());
        assert!(!c.is_open());
        assert!(commit(&mut s, &mut c, Alternative::Second, &mut log).is_err());
    }

    #[test]
    fn second_on_singleton_fails_at_next_propagation() {
        let mut s = State::new();
        let y = s.add_var(2, 2).unwrap();
        let mut c = Choice { var: y, pivot: 2, committed: Committed::First };
        let mut log = ChangeLog::default();
        commit(&mut s, &mut c, Alternative::Second, &mut log).unwrap();
        assert_eq!(s.status(), Status::Failed);
        assert_eq!(s.propagate(&mut log).outcome, Outcome::Inconsistency);
    }
}
