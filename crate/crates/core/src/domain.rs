//! Integer domains represented as ordered chains of disjoint ranges.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Dense index of a variable inside one problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl VarId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VarId {
    fn from(i: usize) -> Self {
        VarId(i as u32)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Closed interval `[lo, hi]`, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    #[inline]
    pub fn width(&self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }
}

/// Signal raised when a domain operation removes the last value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wipeout;

/// Result of an in-place domain update.
pub type Update = std::result::Result<bool, Wipeout>;

type Chain = SmallVec<[Range; 2]>;

/// A finite set of integers kept as a strictly sorted list of ranges.
///
/// Adjacent ranges are always merged, so two value-equal domains have the
/// same range chain. The chain is empty only after a wipeout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    ranges: Chain,
}

impl Domain {
    pub fn new(lo: i64, hi: i64) -> Result<Domain> {
        if lo > hi {
            return Err(Error::EmptyDomain { lo, hi });
        }
        let mut ranges = Chain::new();
        ranges.push(Range { lo, hi });
        Ok(Domain { ranges })
    }

    pub fn singleton(v: i64) -> Domain {
        let mut ranges = Chain::new();
        ranges.push(Range { lo: v, hi: v });
        Domain { ranges }
    }

    /// Builds a domain from arbitrary (possibly overlapping, unsorted) ranges.
    pub fn from_ranges<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Result<Domain> {
        let mut raw: Vec<Range> = Vec::new();
        for (lo, hi) in it {
            if lo > hi {
                return Err(Error::EmptyDomain { lo, hi });
            }
            raw.push(Range { lo, hi });
        }
        if raw.is_empty() {
            return Err(Error::EmptyDomain { lo: 0, hi: -1 });
        }
        raw.sort_by_key(|r| r.lo);
        let mut ranges = Chain::new();
        for r in raw {
            match ranges.last_mut() {
                Some(last) if r.lo <= last.hi.saturating_add(1) => last.hi = last.hi.max(r.hi),
                _ => ranges.push(r),
            }
        }
        Ok(Domain { ranges })
    }

    /// Builds a domain from a set of values.
    pub fn from_values<I: IntoIterator<Item = i64>>(it: I) -> Result<Domain> {
        Domain::from_ranges(it.into_iter().map(|v| (v, v)))
    }

    #[inline]
    pub fn ranges(&self) -> &[Range] {
        &self.ranges
    }

    #[inline]
    pub fn range_count(&self) -> usize {
        self.ranges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.ranges.iter().map(Range::width).sum()
    }

    #[inline]
    pub fn is_fixed(&self) -> bool {
        self.ranges.len() == 1 && self.ranges[0].lo == self.ranges[0].hi
    }

    /// The assigned value of a fixed domain.
    #[inline]
    pub fn value(&self) -> Option<i64> {
        if self.is_fixed() {
            Some(self.ranges[0].lo)
        } else {
            None
        }
    }

    /// Smallest value. Panics on an empty domain.
    #[inline]
    pub fn min(&self) -> i64 {
        self.ranges[0].lo
    }

    /// Largest value. Panics on an empty domain.
    #[inline]
    pub fn max(&self) -> i64 {
        self.ranges[self.ranges.len() - 1].hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.ranges
            .binary_search_by(|r| {
                if r.hi < v {
                    std::cmp::Ordering::Less
                } else if r.lo > v {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .is_ok()
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranges.iter().flat_map(|r| r.lo..=r.hi)
    }

    /// Removes `v`. Returns whether the domain changed, or [`Wipeout`] when
    /// `v` was the last value (the domain is then left empty).
    pub fn remove(&mut self, v: i64) -> Update {
        let pos = match self.ranges.iter().position(|r| r.hi >= v) {
            Some(p) if self.ranges[p].lo <= v => p,
            _ => return Ok(false),
        };
        let r = self.ranges[pos];
        match (r.lo == v, r.hi == v) {
            (true, true) => {
                self.ranges.remove(pos);
            }
            (true, false) => self.ranges[pos].lo = v + 1,
            (false, true) => self.ranges[pos].hi = v - 1,
            (false, false) => {
                self.ranges[pos].hi = v - 1;
                self.ranges.insert(pos + 1, Range { lo: v + 1, hi: r.hi });
            }
        }
        if self.ranges.is_empty() {
            Err(Wipeout)
        } else {
            Ok(true)
        }
    }

    /// Intersects with `[lo, hi]`.
    pub fn tighten(&mut self, lo: i64, hi: i64) -> Update {
        if self.ranges.is_empty() {
            return Err(Wipeout);
        }
        if lo > hi {
            self.ranges.clear();
            return Err(Wipeout);
        }
        if lo <= self.min() && hi >= self.max() {
            return Ok(false);
        }
        self.ranges.retain(|r| r.hi >= lo && r.lo <= hi);
        if let Some(first) = self.ranges.first_mut() {
            first.lo = first.lo.max(lo);
        }
        if let Some(last) = self.ranges.last_mut() {
            last.hi = last.hi.min(hi);
        }
        if self.ranges.is_empty() {
            Err(Wipeout)
        } else {
            Ok(true)
        }
    }

    /// Makes `self` value-equal to `snapshot`, reusing the existing chain:
    /// ranges are overwritten in place, then the chain is trimmed or extended
    /// to the snapshot's length.
    pub fn overwrite(&mut self, snapshot: &Domain) {
        let keep = self.ranges.len().min(snapshot.ranges.len());
        self.ranges[..keep].copy_from_slice(&snapshot.ranges[..keep]);
        if snapshot.ranges.len() < self.ranges.len() {
            self.ranges.truncate(keep);
        } else {
            self.ranges.extend_from_slice(&snapshot.ranges[keep..]);
        }
    }

    /// Checks the range-list normal form.
    pub fn is_normalized(&self) -> bool {
        self.ranges.iter().all(|r| r.lo <= r.hi)
            && self
                .ranges
                .windows(2)
                .all(|w| w[0].hi.checked_add(1).is_some_and(|n| n < w[1].lo))
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.ranges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{}]", r.lo, r.hi)?;
        }
        f.write_str("}")
    }
}
