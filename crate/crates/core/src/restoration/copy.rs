use super::{Payload, PathStack};
use crate::state::State;

pub(super) fn record(s: &State) -> Payload {
    Payload::Copy(s.copy())
}

/// Hands out a clone so the stored copy stays available to later restores.
pub(super) fn restore(path: &mut PathStack) -> Option<State> {
    if !path.expose_open_choice() {
        return None;
    }
    let top = path.top()?;
    Some(top.payload.state().expect("copy chunks always hold a state").copy())
}
