//! Ground sets and their subsets, packed into a single machine word.
//!
//! Elements carry 1-based labels externally; bit `k` of a [`Subset`]
//! stands for label `k + 1`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: u8,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_GROUND {
            return Err(Error::GroundSize(size));
        }
        Ok(GroundSet { size: size as u8 })
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    /// The whole set N.
    pub fn full(self) -> Subset {
        Subset((1u64 << self.size) - 1)
    }

    /// Number of subsets, 2^m. Only meaningful for exhaustive sizes.
    pub fn power_set_len(self) -> u64 {
        1u64 << self.size
    }

    pub fn contains(self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    pub fn check(self, s: Subset) -> Result<Subset> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::InvalidSubset {
                mask: s.0,
                size: self.size(),
            })
        }
    }

    /// Validates a 1-based label and returns its 0-based index.
    pub fn index_of(self, label: usize) -> Result<usize> {
        if label == 0 || label > self.size() {
            return Err(Error::ElementOutOfRange {
                element: label,
                size: self.size(),
            });
        }
        Ok(label - 1)
    }

    pub fn subset_from_labels<I>(self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Subset::EMPTY;
        for label in labels {
            s = s.with(self.index_of(label)?);
        }
        Ok(s)
    }

    pub fn complement(self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }
}

/// A subset of the ground set as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(index: usize) -> Self {
        Subset(1u64 << index)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn has(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn with(self, index: usize) -> Self {
        Subset(self.0 | 1u64 << index)
    }

    pub fn without(self, index: usize) -> Self {
        Subset(self.0 & !(1u64 << index))
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based indices in ascending order.
    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    /// 1-based labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// Canonical ordering key: cardinality first, then numeric value.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

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

/// Iterates every subset of `mask` (including the empty set and `mask` itself).
pub fn submasks(mask: Subset) -> impl Iterator<Item = Subset> {
    let m = mask.0;
    let mut cur = Some(m);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 { None } else { Some((out - 1) & m) };
        Some(Subset(out))
    })
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, label) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}
