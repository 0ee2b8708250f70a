//! Sparse exact linear algebra over the rationals: incremental echelon
//! forms, span membership and kernels.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::weyl::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

pub fn axpy(target: &mut SparseVec, c: &Rational, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, a) in v {
        let e = target.entry(*k).or_insert_with(Rational::zero);
        *e += c * a;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Assigns dense indices to arbitrary hashable coordinates.
#[derive(Debug, Clone)]
pub struct Indexer<K: Eq + Hash + Clone> {
    map: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Eq + Hash + Clone> Default for Indexer<K> {
    fn default() -> Self {
        Indexer {
            map: HashMap::new(),
            keys: Vec::new(),
        }
    }
}

impl<K: Eq + Hash + Clone> Indexer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, k: &K) -> usize {
        if let Some(&i) = self.map.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.map.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Row echelon form built one vector at a time. Every stored row is monic
/// at its pivot, and the pivot is its smallest coordinate.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating every pivot it meets.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v).0
    }

    /// Residual plus the multiples of each row (keyed by pivot) subtracted.
    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Rational)>) {
        let mut v = v.clone();
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            match next {
                None => return (v, used),
                Some((k, c)) => {
                    axpy(&mut v, &-c.clone(), &self.rows[&k]);
                    used.push((k, c));
                    cursor = k + 1;
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.iter().next() {
            None => false,
            Some((&p, c)) => {
                let inv = Rational::one() / c;
                let row: SparseVec = r.iter().map(|(k, a)| (*k, a * &inv)).collect();
                self.rows.insert(p, row);
                true
            }
        }
    }
}

/// Kernel of the linear map sending basis vector `i` to `images[i]`,
/// returned as sparse combinations of the source basis.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    // rows carry their source combination in a shadow vector
    let mut rows: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut tag: SparseVec = BTreeMap::new();
        tag.insert(i, Rational::one());
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            match next {
                None => break,
                Some((k, c)) => {
                    let (row, rtag) = &rows[&k];
                    axpy(&mut v, &-c.clone(), row);
                    axpy(&mut tag, &-c, rtag);
                    cursor = k + 1;
                }
            }
        }
        match v.iter().next() {
            None => out.push(tag),
            Some((&p, c)) => {
                let inv = Rational::one() / c;
                let row = v.iter().map(|(k, a)| (*k, a * &inv)).collect();
                let t = tag.iter().map(|(k, a)| (*k, a * &inv)).collect();
                rows.insert(p, (row, t));
            }
        }
    }
    out
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    vectors.iter().filter(|v| e.insert(v)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::rat;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(k, v)| (*k, rat(*v))).filter(|(_, v)| !v.is_zero()).collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(e.contains(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
        assert!(!e.insert(&sv(&[(0, 2), (1, 4)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_vectors_map_to_zero() {
        let images = vec![sv(&[(0, 1), (1, 1)]), sv(&[(0, 2), (1, 2)]), sv(&[(1, 1)]), sv(&[(0, 1)])];
        let ker = kernel(&images);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let mut acc = SparseVec::new();
            for (i, c) in k {
                axpy(&mut acc, c, &images[*i]);
            }
            assert!(acc.is_empty());
        }
        assert_eq!(rank(&images), 2);
    }
}
