use super::{Payload, PathStack};
use crate::domain::{Domain, VarId};
use crate::propagation::ChangeLog;
use crate::state::{State, Status};

pub(super) fn record(log: &mut ChangeLog) -> Payload {
    Payload::Trail(log.take_entries())
}

fn undo(s: &mut State, entries: &[(VarId, Domain)]) {
    for (var, pre) in entries.iter().rev() {
        s.overwrite_domain(*var, pre);
    }
}

/// Undoes the `(variable, pre-image)` entries taken from a [`ChangeLog`] in
/// pre-image mode, newest first. Meant for logs cleared at a fix point: the
/// queue is emptied and the status reset to active.
pub fn rollback(s: &mut State, entries: &[(VarId, Domain)]) {
    undo(s, entries);
    s.clear_queue();
    s.set_status(Status::Active);
}

/// Rolls `s` back in place: first the pending changes since the last fix
/// point, then whole chunks until an open choice is on top.
pub(super) fn restore(path: &mut PathStack, mut s: State, log: &mut ChangeLog) -> Option<State> {
    let pending = log.take_entries();
    undo(&mut s, &pending);
    loop {
        let top = path.top()?;
        if top.choice.is_open() {
            break;
        }
        let chunk = path.pop()?;
        match &chunk.payload {
            Payload::Trail(entries) => undo(&mut s, entries),
            _ => unreachable!("trail stack holds trail chunks only"),
        }
    }
    s.clear_queue();
    s.set_status(Status::Active);
    s.set_depth(path.len() - 1);
    Some(s)
}
