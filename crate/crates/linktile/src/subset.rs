//! Subsets of a small ordered ground set, stored as bitmasks.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::{Deserialize, Serialize};

/// Hard cap on ground-set size for dense tables.
pub const MAX_GROUND: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(h: usize) -> Subset {
        debug_assert!(h <= 31);
        Subset(((1u64 << h) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, h: usize) -> Subset {
        Subset(!self.0 & Subset::full(h).0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf { of: self.0, next: Some(0) }
    }

    /// Every subset of an `h`-element ground set.
    pub fn all(h: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << h).map(Subset)
    }
}

pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }
}

pub struct SubsetsOf {
    of: u32,
    next: Option<u32>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.of { None } else { Some((cur.wrapping_sub(self.of)) & self.of) };
        Some(Subset(cur))
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, o: Subset) -> Subset {
        Subset(self.0 ^ o.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
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
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_enumerates_all() {
        let s = Subset(0b1011);
        let v: Vec<u32> = s.subsets().map(|x| x.0).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn complement_and_members() {
        let s = Subset::from_indices([0, 2]);
        assert_eq!(s.complement(4), Subset::from_indices([1, 3]));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(format!("{s}"), "{0,2}");
    }
}
