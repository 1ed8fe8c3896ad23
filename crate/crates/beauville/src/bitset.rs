//! Fixed-capacity bitsets over element indices.
//!
//! Element sets (Σ-sets, subgroups, conjugacy classes) are subsets of
//! `{0, …, n−1}` for a group of order `n ≤ 2048`, so a flat `Vec<u64>` is the
//! right representation: disjointness of two Σ-sets is a handful of word ANDs
//! and sits in the innermost loop of every structure search.

/// A subset of `{0, …, len−1}` stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] & (1u64 << (i & 63)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// True iff `self ∩ other ⊆ {single}`. The Σ-disjointness test: both sets
    /// always contain the identity, so equality with `{single}` follows.
    pub fn intersects_only(&self, other: &Bitset, single: usize) -> bool {
        debug_assert_eq!(self.len, other.len);
        let (sw, sb) = (single >> 6, 1u64 << (single & 63));
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let and = a & b;
            let allowed = if i == sw { sb } else { 0 };
            if and & !allowed != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_disjoint(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Elements as sorted indices.
    pub fn to_vec(&self) -> Vec<u16> {
        self.iter().map(|i| i as u16).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl FromIterator<usize> for Bitset {
    /// Collects indices into a bitset sized by the maximum index; mostly a
    /// test convenience. Prefer `Bitset::new` + `insert` when the universe
    /// size is known.
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let len = items.iter().max().map_or(0, |&m| m + 1);
        let mut bs = Bitset::new(len);
        for i in items {
            bs.insert(i);
        }
        bs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_count() {
        let mut b = Bitset::new(130);
        b.insert(0);
        b.insert(64);
        b.insert(129);
        assert!(b.contains(0) && b.contains(64) && b.contains(129));
        assert!(!b.contains(1));
        assert_eq!(b.count(), 3);
        assert_eq!(b.to_vec(), vec![0, 64, 129]);
    }

    #[test]
    fn intersects_only_identity() {
        let mut a = Bitset::new(100);
        let mut b = Bitset::new(100);
        a.insert(0);
        b.insert(0);
        a.insert(70);
        b.insert(71);
        assert!(a.intersects_only(&b, 0));
        b.insert(70);
        assert!(!a.intersects_only(&b, 0));
    }
}
