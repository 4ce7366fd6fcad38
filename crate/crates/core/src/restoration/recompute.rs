use super::{Distance, Payload, PathStack};
use crate::propagation::{ChangeLog, LogMode, Outcome};
use crate::search::choice::apply;
use crate::state::State;

pub(super) fn record(s: &State, distance: Distance) -> Payload {
    Payload::Recompute(distance.is_copy_point(s.depth()).then(|| s.copy()))
}

/// Rebuilds the target from the nearest stored copy by re-committing the
/// taken alternatives (and replayed objective bounds) of chunks
/// `from..to` in one batch, followed by a single propagation.
fn replay(path: &mut PathStack, s: &mut State, from: usize, to: usize) {
    if from == to {
        return;
    }
    let mut log = ChangeLog::new(LogMode::ChangedOnly);
    for chunk in &path.chunks[from..to] {
        let c = chunk.choice;
        let alt = c.taken().expect("chunks below the top have a committed alternative");
        let _ = apply(s, c.var, c.pivot, alt, &mut log);
        if let (Some(b), Some(obj)) = (chunk.bound, path.objective) {
            let _ = s.tighten(obj, i64::MIN / 4, b, &mut log);
        }
    }
    path.stats.recommits += (to - from) as u64;
    let r = s.propagate(&mut log);
    path.stats.propagator_executions += r.executions;
    assert_eq!(
        r.outcome,
        Outcome::FixPoint,
        "recomputation of a previously consistent path must reach a fix point"
    );
    s.set_depth(to);
}

pub(super) fn restore(path: &mut PathStack, adaptive: bool) -> Option<State> {
    if !path.expose_open_choice() {
        return None;
    }
    let target = path.len() - 1;
    let (mut base, mut s) = path.base(target);
    if adaptive {
        let mid = (base + target) / 2;
        if mid > base {
            replay(path, &mut s, base, mid);
            path.install_copy(mid, &s);
            base = mid;
        }
    }
    replay(path, &mut s, base, target);
    s.set_depth(target);
    Some(s)
}
