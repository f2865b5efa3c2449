use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

/// Bitmask subset of a carrier `{0..n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(u32);

impl PointSet {
    /// Number of points a single `PointSet` can address.
    pub const CAPACITY: usize = 32;
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= Self::CAPACITY);
        if n == 32 {
            PointSet(u32::MAX)
        } else {
            PointSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(PointSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        PointSet(self.0 & !(1 << i))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }

    /// Image under an index map `i -> perm[i]`.
    pub fn map(self, perm: &[usize]) -> Self {
        self.iter().fold(PointSet::EMPTY, |s, i| s.with(perm[i]))
    }

    /// All subsets of `self`, in ascending bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        let mask = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == mask {
                None
            } else {
                // next submask in increasing order
                Some(((out | !mask).wrapping_add(1)) & mask)
            };
            Some(PointSet(out))
        })
    }
}

pub struct Points(u32);

impl Iterator for Points {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 | rhs.0)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & rhs.0)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & !rhs.0)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    /// Complement in the full 32-bit universe; mask with a carrier before use.
    fn not(self) -> PointSet {
        PointSet(!self.0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Deduplicated family of point-sets, sorted by bitmask value.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetFamily(Vec<PointSet>);

impl SetFamily {
    pub fn new(mut members: Vec<PointSet>) -> Self {
        members.sort_unstable();
        members.dedup();
        SetFamily(members)
    }

    pub fn members(&self) -> &[PointSet] {
        &self.0
    }

    pub fn into_members(self) -> Vec<PointSet> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.0.iter().copied()
    }

    pub fn map(&self, perm: &[usize]) -> SetFamily {
        SetFamily::new(self.0.iter().map(|s| s.map(perm)).collect())
    }

    /// Union of all members.
    pub fn union(&self) -> PointSet {
        self.iter().fold(PointSet::EMPTY, |a, b| a | b)
    }
}

impl FromIterator<PointSet> for SetFamily {
    fn from_iter<I: IntoIterator<Item = PointSet>>(it: I) -> Self {
        SetFamily::new(it.into_iter().collect())
    }
}
