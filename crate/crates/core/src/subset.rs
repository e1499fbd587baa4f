use std::cmp::Ordering;
use std::fmt;

/// A subset of the generating set, stored as a bitmask over generator indices.
///
/// Two special subgroups coincide iff their generating subsets do, so this is
/// the label type for every vertex and edge group. Ordering is by size first,
/// then lexicographic on the ascending index sequence.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SpecialSubset(u64);

impl SpecialSubset {
    pub const EMPTY: SpecialSubset = SpecialSubset(0);

    pub fn from_bits(bits: u64) -> Self {
        SpecialSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` generators.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            SpecialSubset(u64::MAX)
        } else {
            SpecialSubset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SpecialSubset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SpecialSubset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        SpecialSubset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        SpecialSubset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        SpecialSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SpecialSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SpecialSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest generator index in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// All subsets of `self`, in no particular order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// All subsets of `self` sorted canonically (size, then lexicographic).
    pub fn subsets_canonical(self) -> Vec<SpecialSubset> {
        let mut all: Vec<_> = self.subsets().collect();
        all.sort();
        all
    }
}

impl Ord for SpecialSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for SpecialSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SpecialSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for SpecialSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SpecialSubset::from_indices(iter)
    }
}

/// Ascending generator indices of a [`SpecialSubset`].
#[derive(Clone)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Submask enumeration of a fixed universe.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = SpecialSubset;

    fn next(&mut self) -> Option<SpecialSubset> {
        let current = self.next?;
        self.next = if current == self.universe {
            None
        } else {
            Some((current.wrapping_sub(self.universe)) & self.universe)
        };
        Some(SpecialSubset(current))
    }
}
