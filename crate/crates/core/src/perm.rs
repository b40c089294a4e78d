//! Permutations in one-line notation and reduced words.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` stored in one-line notation (zero-based internally).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    w: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            w: (0..n).collect(),
        }
    }

    /// From a one-based one-line word like `[2, 1, 3]`.
    pub fn from_one_line(word: &[usize]) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in word {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{word:?} is not a permutation"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self {
            w: word.iter().map(|v| v - 1).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// One-based one-line word.
    pub fn one_line(&self) -> Vec<usize> {
        self.w.iter().map(|v| v + 1).collect()
    }

    /// Image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.w[i - 1] + 1
    }

    /// The simple transposition `s_i` (one-based, `1 <= i < n`).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.w.swap(i - 1, i);
        p
    }

    /// Longest element `w_0`.
    pub fn longest(n: usize) -> Self {
        Self {
            w: (0..n).rev().collect(),
        }
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.w[i] > self.w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            w: other.w.iter().map(|&j| self.w[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.w.iter().enumerate() {
            inv[v] = i;
        }
        Self { w: inv }
    }

    /// `w s_i`: swap positions `i` and `i+1` of the one-line word.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.w.swap(i - 1, i);
        p
    }

    /// `s_i w`: swap the values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        Self {
            w: self
                .w
                .iter()
                .map(|&v| {
                    if v == i - 1 {
                        i
                    } else if v == i {
                        i - 1
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// Is `s_i` a left descent, i.e. `l(s_i w) < l(w)`?
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.w[i - 1] > inv.w[i]
    }

    /// Is `s_i` a right descent, i.e. `l(w s_i) < l(w)`?
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.w[i - 1] > self.w[i]
    }

    /// The lexicographically smallest reduced word `[i_1, ..., i_l]` with
    /// `w = s_{i_1} ... s_{i_l}`, found by repeatedly peeling the smallest left descent.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut cur = self.clone();
        while let Some(i) = (1..cur.n()).find(|&i| cur.has_left_descent(i)) {
            word.push(i);
            cur = cur.mul_simple_left(i);
        }
        word
    }

    /// Product `s_{i_1} ... s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &i| acc.mul_simple_right(i))
    }

    /// All permutations of `n` points, sorted by length then one-line word.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        permute(&mut cur, 0, &mut out);
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        out
    }
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == cur.len() {
        out.push(Permutation { w: cur.clone() });
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
