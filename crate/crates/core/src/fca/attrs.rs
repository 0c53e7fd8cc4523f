//! Fixed-width attribute sets over an ordered universe, and the total orders
//! used for lectic enumeration.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::FcaError;

const WORD: usize = 64;

/// A subset of the attribute universe `{0, .., universe-1}`.
///
/// The universe size is part of the value: sets over different universes never
/// compare equal and binary operations on them panic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AttributeSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

impl AttributeSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: SmallVec::from_elem(0, universe.div_ceil(WORD)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Set whose members are the bits of `mask` (bit `i` is attribute `i`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask constructor limited to 64 attributes");
        let mut set = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == WORD { u64::MAX } else { (1 << universe) - 1 };
            set.words[0] = mask & keep;
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "attribute {i} outside universe of {}", self.universe);
        let had = self.contains(i);
        self.words[i / WORD] |= 1 << (i % WORD);
        !had
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        if had {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "attribute sets over different universes"
        );
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    /// Low 64 bits as a mask; convenient for exhaustive tests over small universes.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for AttributeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A total order on the attribute universe.
///
/// Rank 0 is the smallest attribute and the most significant one for lectic
/// comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttributeOrder {
    by_rank: Vec<usize>,
    rank_of: Vec<usize>,
}

impl AttributeOrder {
    pub fn identity(universe: usize) -> Self {
        Self {
            by_rank: (0..universe).collect(),
            rank_of: (0..universe).collect(),
        }
    }

    /// `by_rank[k]` is the attribute of rank `k`.
    pub fn from_permutation(by_rank: Vec<usize>) -> Result<Self, FcaError> {
        let n = by_rank.len();
        let mut rank_of = vec![usize::MAX; n];
        for (rank, &attr) in by_rank.iter().enumerate() {
            if attr >= n || rank_of[attr] != usize::MAX {
                return Err(FcaError::InvalidOrder(format!(
                    "{by_rank:?} is not a permutation of 0..{n}"
                )));
            }
            rank_of[attr] = rank;
        }
        Ok(Self { by_rank, rank_of })
    }

    pub fn universe(&self) -> usize {
        self.by_rank.len()
    }

    pub fn attribute_at(&self, rank: usize) -> usize {
        self.by_rank[rank]
    }

    pub fn rank(&self, attr: usize) -> usize {
        self.rank_of[attr]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.by_rank
    }

    /// Lectic comparison: `a < b` iff the smallest attribute (by rank) in the
    /// symmetric difference belongs to `b`.
    pub fn lectic_cmp(&self, a: &AttributeSet, b: &AttributeSet) -> Ordering {
        for &attr in &self.by_rank {
            match (a.contains(attr), b.contains(attr)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    /// Attributes of `set` with rank strictly below `rank`.
    pub fn prefix(&self, set: &AttributeSet, rank: usize) -> AttributeSet {
        AttributeSet::from_indices(
            set.universe(),
            self.by_rank[..rank].iter().copied().filter(|&a| set.contains(a)),
        )
    }

    /// The member of `set` with the largest rank.
    pub fn max_member(&self, set: &AttributeSet) -> Option<usize> {
        self.by_rank.iter().rev().copied().find(|&a| set.contains(a))
    }
}
