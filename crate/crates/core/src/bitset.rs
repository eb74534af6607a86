//! Fixed-width vertex sets.
//!
//! Members are 0-based internally; everything user-facing converts to the
//! 1-based labels at the boundary.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A set of vertices drawn from `0..width`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    width: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(width: usize) -> Self {
        VertexSet {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::new(width);
        for v in 0..width {
            s.insert(v);
        }
        s
    }

    pub fn from_iter_width<I: IntoIterator<Item = usize>>(width: usize, it: I) -> Self {
        let mut s = Self::new(width);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `width` bits of `mask`.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        debug_assert!(width >= WORD || mask >> width == 0);
        let mut s = Self::new(width);
        if !s.words.is_empty() {
            s.words[0] = mask;
        }
        s
    }

    /// The members as a mask; only valid when `width <= 64`.
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.width <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.width && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.width,
            "vertex {v} outside set of width {}",
            self.width
        );
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.width {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + b)
                }
            })
        })
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Same members, reinterpreted over a new width (members must fit).
    pub fn with_width(&self, width: usize) -> VertexSet {
        VertexSet::from_iter_width(width, self.iter())
    }

    /// 1-based member labels in increasing order.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Total order used for canonical forms: cardinality first, then the
    /// sorted member lists compared lexicographically.
    pub fn canonical_cmp(&self, other: &VertexSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crosses_word_boundary() {
        let mut s = VertexSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.labels(), vec![1, 130]);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = VertexSet::from_iter_width(6, [0, 3]);
        let b = VertexSet::from_iter_width(6, [1, 4]);
        let c = VertexSet::from_iter_width(6, [0, 1, 2]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
        assert_eq!(c.canonical_cmp(&c), Ordering::Equal);
    }
}
