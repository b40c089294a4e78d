//! Incremental row echelon form over Q for sparse vectors, used to compute ranks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse vector with integer entries, indexed by column.
pub(crate) type SparseVec = BTreeMap<usize, BigInt>;

/// Rows are kept primitive (content 1) with a positive pivot; reduction is
/// fraction free, so the arithmetic is exact rational elimination.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
    width: Option<usize>,
}

impl Echelon {
    /// Echelon over a known number of columns, so [`Self::is_full`] is meaningful.
    pub fn with_width(width: usize) -> Self {
        Self {
            rows: BTreeMap::new(),
            width: Some(width),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.width.is_some_and(|w| self.rows.len() >= w)
    }

    /// Insert a vector; returns true if it was independent of the rows so far.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((&col, _)) = v.iter().next() else {
                return false;
            };
            match self.rows.get(&col) {
                None => {
                    normalize(&mut v);
                    self.rows.insert(col, v);
                    return true;
                }
                Some(row) => {
                    // v <- p*v - c*row, where p = row pivot, c = v[col]
                    let p = &row[&col];
                    let c = v[&col].clone();
                    let g = p.gcd(&c);
                    let mul_v = p / &g;
                    let mul_r = &c / &g;
                    if !mul_v.is_one() {
                        for x in v.values_mut() {
                            *x *= &mul_v;
                        }
                    }
                    for (k, r) in row {
                        let e = v.entry(*k).or_insert_with(BigInt::zero);
                        *e -= &mul_r * r;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                    normalize(&mut v);
                }
            }
        }
    }
}

fn normalize(v: &mut SparseVec) {
    let mut g = BigInt::zero();
    for c in v.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_neg = v.values().next().is_some_and(|c| c.is_negative());
    if lead_neg {
        g = -g;
    }
    if !g.is_one() {
        for c in v.values_mut() {
            *c /= &g;
        }
    }
}

/// Rank over Q of a family of sparse integer vectors.
#[cfg(test)]
pub(crate) fn rank<I: IntoIterator<Item = SparseVec>>(vs: I) -> usize {
    let mut e = Echelon::default();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}
