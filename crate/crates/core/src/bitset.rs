//! Small fixed-width sets of element ids.
//!
//! [`ElemSet`] holds subsets of a carrier with at most 128 elements, which is
//! the ceiling for every hyperfield table in this crate. [`BitRow`] is an
//! unbounded row used for order relations of larger posets.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const ELEMSET_CAPACITY: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(x: usize) -> Self {
        debug_assert!(x < ELEMSET_CAPACITY);
        ElemSet(1u128 << x)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= ELEMSET_CAPACITY);
        if n == ELEMSET_CAPACITY {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, x: usize) -> bool {
        x < ELEMSET_CAPACITY && (self.0 >> x) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u128 << x);
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> ElemSetIter {
        ElemSetIter(self.0)
    }

    /// Image of the set under `f`.
    pub fn map(self, mut f: impl FnMut(usize) -> usize) -> ElemSet {
        self.iter().map(&mut f).collect()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

pub struct ElemSetIter(u128);

impl Iterator for ElemSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElemSetIter {}

/// Growable bit row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut r = BitRow::new(len);
        for i in 0..len {
            r.set(i);
        }
        r
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn intersect_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elemset_basics() {
        let s: ElemSet = [3, 0, 7].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 7]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(7) && !s.contains(1));
        assert_eq!(s.to_string(), "{0,3,7}");
        assert!(ElemSet::singleton(3).is_subset(s));
        assert_eq!(ElemSet::full(128).len(), 128);
        assert_eq!(s.map(|x| x / 2), [0, 1, 3].into_iter().collect());
    }

    #[test]
    fn bitrow_ops() {
        let mut a = BitRow::new(130);
        a.set(1);
        a.set(129);
        let mut b = BitRow::full(130);
        assert!(a.is_subset(&b));
        b.intersect_with(&a);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 129]);
        assert_eq!(b.count(), 2);
    }
}
