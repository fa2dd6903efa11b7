//! Exact linear algebra over `Q` on sparse row vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A sparse vector indexed by column.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Incrementally grown row-echelon basis of a subspace of `Q^m`.
///
/// Each stored row has its pivot normalised to 1 and is reduced against the
/// pivots of all earlier rows.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        v.retain(|_, c| !c.is_zero());
        loop {
            let hit = v
                .iter()
                .find(|(col, _)| self.pivots.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            let Some((col, c)) = hit else { return v };
            let row = &self.rows[self.pivots[&col]];
            for (k, x) in row {
                let e = v.entry(*k).or_insert_with(Rational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&col, lead)) = r.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        for x in r.values_mut() {
            *x *= &inv;
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut span = Span::new();
    for r in rows {
        span.insert(r);
    }
    span.rank()
}

/// Basis of `{x in Q^ncols : M x = 0}` for `M` given by sparse rows.
pub fn null_space(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    // fully reduced echelon form
    let mut span = Span::new();
    for r in rows {
        span.insert(r);
    }
    let mut order: Vec<(usize, usize)> = span.pivots.iter().map(|(c, i)| (*c, *i)).collect();
    order.sort_unstable_by_key(|&(c, _)| std::cmp::Reverse(c));
    let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (col, idx) in order {
        let mut row = span.rows[idx].clone();
        let later: Vec<usize> = row
            .keys()
            .copied()
            .filter(|k| *k != col && done.contains_key(k))
            .collect();
        for k in later {
            let c = row.get(&k).cloned().unwrap_or_else(Rational::zero);
            if c.is_zero() {
                continue;
            }
            for (j, x) in &done[&k] {
                let e = row.entry(*j).or_insert_with(Rational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    row.remove(j);
                }
            }
        }
        done.insert(col, row);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !done.contains_key(c)) {
        let mut v = SparseVec::new();
        v.insert(free, Rational::one());
        for (pc, row) in &done {
            if let Some(x) = row.get(&free) {
                v.insert(*pc, -x.clone());
            }
        }
        basis.push(v);
    }
    basis
}

/// `M v` for sparse rows.
pub fn apply(rows: &[SparseVec], v: &SparseVec) -> Vec<Rational> {
    rows.iter()
        .map(|r| {
            r.iter()
                .filter_map(|(k, x)| v.get(k).map(|y| x * y))
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn dense(v: &[i64]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i, int(*x)))
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[dense(&[1, 2]), dense(&[2, 4])]), 1);
        assert_eq!(rank(&[dense(&[1, 2, 3]), dense(&[0, 1, 1]), dense(&[1, 3, 4])]), 2);
        assert_eq!(rank(&[dense(&[0, 0, 0])]), 0);
    }

    #[test]
    fn null_space_of_known_matrix() {
        let m = vec![dense(&[1, 1, 0, 0]), dense(&[0, 1, 1, 0])];
        let ns = null_space(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(apply(&m, v).iter().all(Zero::is_zero));
        }
        assert_eq!(null_space(&[], 3).len(), 3);
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.insert(&dense(&[0, 2, 4])));
        assert!(!s.insert(&dense(&[0, 1, 2])));
        assert!(s.contains(&dense(&[0, -3, -6])));
        assert!(!s.contains(&dense(&[1, 0, 0])));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-2i64..=2, 20)) {
            let rows: Vec<SparseVec> = entries.chunks(5).map(dense).collect();
            let r = rank(&rows);
            let ns = null_space(&rows, 5);
            prop_assert_eq!(r + ns.len(), 5);
            prop_assert_eq!(rank(&ns), ns.len());
            for v in &ns {
                prop_assert!(apply(&rows, v).iter().all(Zero::is_zero));
            }
        }
    }
}
