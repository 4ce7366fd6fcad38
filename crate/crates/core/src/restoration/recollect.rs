use super::{Distance, DomainRecord, Flavor, Payload, PathStack};
use crate::domain::VarId;
use crate::propagation::ChangeLog;
use crate::state::{State, Status};

pub(super) fn record(s: &State, log: &ChangeLog, distance: Distance) -> Payload {
    Payload::Recollect {
        record: DomainRecord::capture(s, log.changed()),
        copy: distance.is_copy_point(s.depth()).then(|| s.copy()),
    }
}

fn record_of(path: &PathStack, index: usize) -> &DomainRecord {
    match &path.chunks[index].payload {
        Payload::Recollect { record, .. } => record,
        _ => unreachable!("recollection stack holds recollection chunks only"),
    }
}

/// Overlays the records of chunks `lo..=hi` onto `s`, newest first; each
/// variable takes the snapshot from the deepest chunk that recorded it.
fn overlay(path: &mut PathStack, s: &mut State, lo: usize, hi: usize, flavor: Flavor) {
    if lo > hi {
        return;
    }
    match flavor {
        Flavor::ChunkCentered => {
            let gen = path.next_generation(s.var_count());
            let mut accesses = 0;
            for i in (lo..=hi).rev() {
                accesses += 1;
                let PathStack { chunks, stamps, .. } = &mut *path;
                let Payload::Recollect { record, .. } = &chunks[i].payload else {
                    unreachable!("recollection stack holds recollection chunks only")
                };
                for (var, dom) in record.entries() {
                    let stamp = &mut stamps[var.index()];
                    if *stamp != gen {
                        *stamp = gen;
                        s.overwrite_domain(*var, dom);
                    }
                }
            }
            path.stats.chunk_accesses += accesses;
        }
        Flavor::VariableCentered => {
            let mut accesses = 0;
            for v in 0..s.var_count() {
                let var = VarId::from(v);
                for i in (lo..=hi).rev() {
                    accesses += 1;
                    if let Some(dom) = record_of(path, i).get(var) {
                        s.overwrite_domain(var, dom);
                        break;
                    }
                }
            }
            path.stats.chunk_accesses += accesses;
        }
    }
}

/// Rebuilds the target fix point from the nearest stored copy without
/// running any propagator.
pub(super) fn restore(path: &mut PathStack, adaptive: bool, flavor: Flavor) -> Option<State> {
    if !path.expose_open_choice() {
        return None;
    }
    let target = path.len() - 1;
    let (mut base, mut s) = path.base(target);
    if adaptive {
        let mid = (base + target) / 2;
        if mid > base {
            overlay(path, &mut s, base + 1, mid, flavor);
            s.set_depth(mid);
            path.install_copy(mid, &s);
            base = mid;
        }
    }
    overlay(path, &mut s, base + 1, target, flavor);
    s.clear_queue();
    s.set_status(Status::Active);
    s.set_depth(target);
    Some(s)
}
