//! Change notification for domain mutations.

use crate::domain::{Domain, VarId};

/// What a [`ChangeLog`] materializes for each changed variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogMode {
    /// Only the set of changed variables.
    #[default]
    ChangedOnly,
    /// Changed variables plus the domain each had before its first change.
    PreImages,
}

/// Records which variables changed during one log lifetime, in order of
/// their first change, optionally with their pre-change domains.
///
/// A log lifetime runs from just before a branch commit to the next fix
/// point, so it covers every variable that differs from the previous fix
/// point.
#[derive(Debug, Clone, Default)]
pub struct ChangeLog {
    mode: LogMode,
    changed: Vec<VarId>,
    pre_images: Vec<Domain>,
    marked: Vec<bool>,
}

impl ChangeLog {
    pub fn new(mode: LogMode) -> ChangeLog {
        ChangeLog { mode, ..Default::default() }
    }

    pub fn mode(&self) -> LogMode {
        self.mode
    }

    /// Must be called before `var` is mutated, with its current domain.
    pub fn note_change(&mut self, var: VarId, pre_image: &Domain) {
        let i = var.index();
        if i >= self.marked.len() {
            self.marked.resize(i + 1, false);
        }
        if self.marked[i] {
            return;
        }
        self.marked[i] = true;
        self.changed.push(var);
        if self.mode == LogMode::PreImages {
            self.pre_images.push(pre_image.clone());
        }
    }

    pub fn contains(&self, var: VarId) -> bool {
        self.marked.get(var.index()).copied().unwrap_or(false)
    }

    /// Changed variables in order of first change.
    pub fn changed(&self) -> &[VarId] {
        &self.changed
    }

    /// `(variable, pre-image)` pairs; empty unless in [`LogMode::PreImages`].
    pub fn entries(&self) -> impl Iterator<Item = (VarId, &Domain)> + '_ {
        self.changed.iter().copied().zip(self.pre_images.iter())
    }

    pub fn len(&self) -> usize {
        self.changed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.changed.is_empty()
    }

    /// Starts a new lifetime, keeping the mode and allocations.
    pub fn clear(&mut self) {
        for v in self.changed.drain(..) {
            self.marked[v.index()] = false;
        }
        self.pre_images.clear();
    }

    /// Moves the pre-image entries out and starts a new lifetime.
    pub fn take_entries(&mut self) -> Vec<(VarId, Domain)> {
        let pre = std::mem::take(&mut self.pre_images);
        let entries = self.changed.iter().copied().zip(pre).collect();
        self.clear();
        entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_change_only() {
        let x = VarId(0);
        let y = VarId(3);
        let d = Domain::new(1, 8).unwrap();

        let mut log = ChangeLog::new(LogMode::PreImages);
        log.note_change(x, &d);
        assert_eq!(log.changed(), &[x]);
        assert_eq!(log.entries().count(), 1);

        log.note_change(x, &Domain::new(1, 4).unwrap());
        assert_eq!(log.changed(), &[x]);
        let entries: Vec<_> = log.entries().collect();
        assert_eq!(entries, vec![(x, &d)], "pre-image is the first one");

        log.note_change(y, &d);
        assert_eq!(log.changed(), &[x, y]);
        assert!(log.contains(y) && !log.contains(VarId(1)));

        log.clear();
        assert!(log.is_empty() && !log.contains(x));
    }

    #[test]
    fn changed_only_mode_skips_snapshots() {
        let mut log = ChangeLog::new(LogMode::ChangedOnly);
        log.note_change(VarId(2), &Domain::new(0, 3).unwrap());
        assert_eq!(log.len(), 1);
        assert_eq!(log.entries().count(), 0);
    }

    #[test]
    fn take_entries_resets() {
        let mut log = ChangeLog::new(LogMode::PreImages);
        log.note_change(VarId(1), &Domain::singleton(4));
        let e = log.take_entries();
        assert_eq!(e, vec![(VarId(1), Domain::singleton(4))]);
        assert!(log.is_empty());
        log.note_change(VarId(1), &Domain::singleton(5));
        assert_eq!(log.len(), 1);
    }
}
