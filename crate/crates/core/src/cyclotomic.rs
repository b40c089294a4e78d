//! Cyclotomic quotients `ONH_n / (x_1^Lambda)` by brute force, and the simple
//! weight modules `V^Lambda` over the covering ground ring.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::onh::{basis_of_degree, to_sparse, Basis, Letter, OnhElement};
use crate::perm::Permutation;
use crate::scalars::{qint, CoveringScalar};
use crate::skewpoly::SkewPoly;

/// Graded dimensions of a cyclotomic quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycQuotient {
    pub n: usize,
    pub lambda: usize,
    /// Z-degree to dimension; only nonzero entries are stored.
    pub dims: BTreeMap<i64, usize>,
}

impl CycQuotient {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn top_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "lambda": self.lambda,
            "dims": self.dims.iter().map(|(d, v)| serde_json::json!({"degree": d, "dim": v})).collect::<Vec<_>>(),
            "total": self.total(),
        })
    }
}

/// Last degree the quotient can live in, before the zero-run check.
pub fn degree_stop_bound(n: usize, lambda: usize) -> i64 {
    let (n, l) = (n as i64, lambda as i64);
    2 * n * (l - n) + 2 * n * (n - 1)
}

const ZERO_RUN: i64 = 4;

/// Dimension of the degree `d` slice of `ONH_n / (x_1^Lambda)`.
///
/// Inside the slice, the two-sided ideal is spanned by the normal forms of
/// `d_w x^g d_v` with `g_1 >= Lambda`, because `{d_w x^a}` and `{x^b d_v}` are
/// both bases and `x^a x_1^Lambda x^b = +- x^{a + b + Lambda e_1}`.
pub fn quotient_dim_in_degree(n: usize, lambda: usize, d: i64) -> usize {
    let target = basis_of_degree(n, d);
    if target.is_empty() {
        return 0;
    }
    let index: HashMap<&Basis, usize> = target.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut ech = Echelon::with_width(target.len());
    let perms = Permutation::all(n);
    'outer: for w in &perms {
        for v in &perms {
            let xdeg = d / 2 + w.length() as i64 + v.length() as i64;
            if xdeg < lambda as i64 {
                continue;
            }
            let rest = (xdeg - lambda as i64) as u32;
            for mut g in SkewPoly::monomials_of_degree(n, rest) {
                g[0] += lambda as u32;
                let mut e = OnhElement::basis(w.clone(), g);
                for i in v.canonical_word() {
                    e = e.mul_letter(Letter::D(i));
                }
                ech.insert(to_sparse(&e, &index));
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
    }
    target.len() - ech.rank()
}

/// Graded dimensions of `ONH_n^Lambda`, degree by degree from `-n(n-1)`.
pub fn quotient_dims(n: usize, lambda: usize) -> Result<CycQuotient> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let lo = -((n * (n - 1)) as i64);
    let stop = degree_stop_bound(n, lambda).max(lo);
    let hi = stop + 2 * ZERO_RUN;
    let degrees: Vec<i64> = (lo..=hi).step_by(2).collect();
    let results: Vec<(i64, usize)> = degrees
        .par_iter()
        .map(|&d| (d, quotient_dim_in_degree(n, lambda, d)))
        .collect();
    let mut dims = BTreeMap::new();
    for (d, v) in results {
        if v == 0 {
            continue;
        }
        if d > stop {
            return Err(Error::DegreeBudgetExceeded {
                n,
                lambda,
                degree: d,
            });
        }
        dims.insert(d, v);
    }
    Ok(CycQuotient { n, lambda, dims })
}

/// `(n!)^2 * C(Lambda, n)`, the total dimension predicted by the matrix-algebra isomorphism.
pub fn predicted_total(n: usize, lambda: usize) -> u128 {
    if n > lambda {
        return 0;
    }
    let fact: u128 = (1..=n as u128).product();
    let mut binom: u128 = 1;
    for i in 0..n as u128 {
        binom = binom * (lambda as u128 - i) / (i + 1);
    }
    fact * fact * binom
}

/// A vector in `V^Lambda`, with coordinates in the basis `v_0..v_Lambda`.
pub type ModuleVector = Vec<CoveringScalar>;

/// The simple module `V^Lambda` with basis `v_k` of weight `Lambda - 2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    pub lambda: usize,
    /// `e[k]`: `E v_k = e[k] v_{k-1}`, with `e[0] = 0`.
    e: Vec<CoveringScalar>,
    /// `f[k]`: `F v_k = f[k] v_{k+1}`, with `f[Lambda] = 0`.
    f: Vec<CoveringScalar>,
}

/// A generator letter acting on weight modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EF {
    E,
    F,
}

impl WeightModule {
    /// Build `V^Lambda` from the recursion `c_{k+1} = (pi c_k [k] + [Lambda - 2k]) / [k+1]`.
    pub fn new(lambda: usize) -> Result<Self> {
        let l = lambda as i64;
        let mut e = vec![CoveringScalar::zero()];
        for k in 0..l {
            let num = &(&(&CoveringScalar::pi() * &e[k as usize]) * &qint(k)) + &qint(l - 2 * k);
            e.push(num.div_exact(&qint(k + 1))?);
        }
        let f = (0..=l)
            .map(|k| {
                if k == l {
                    CoveringScalar::zero()
                } else {
                    qint(k + 1)
                }
            })
            .collect();
        Ok(Self { lambda, e, f })
    }

    /// The closed form `E v_k = pi^{k-1} [Lambda - k + 1] v_{k-1}`.
    pub fn closed_form_e(lambda: usize, k: usize) -> CoveringScalar {
        if k == 0 {
            return CoveringScalar::zero();
        }
        &CoveringScalar::pi_pow(k as i64 - 1) * &qint(lambda as i64 - k as i64 + 1)
    }

    pub fn e_coeff(&self, k: usize) -> &CoveringScalar {
        &self.e[k]
    }

    pub fn f_coeff(&self, k: usize) -> &CoveringScalar {
        &self.f[k]
    }

    pub fn weight(&self, k: usize) -> i64 {
        self.lambda as i64 - 2 * k as i64
    }

    pub fn basis_vector(&self, k: usize) -> ModuleVector {
        let mut v = vec![CoveringScalar::zero(); self.lambda + 1];
        v[k] = CoveringScalar::one();
        v
    }

    pub fn apply(&self, l: EF, v: &ModuleVector) -> ModuleVector {
        let m = self.lambda;
        let mut out = vec![CoveringScalar::zero(); m + 1];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match l {
                EF::E if k > 0 => out[k - 1] += &(c * &self.e[k]),
                EF::F if k < m => out[k + 1] += &(c * &self.f[k]),
                _ => {}
            }
        }
        out
    }

    /// Divided power `E^(a)` or `F^(a)`: apply `a` times, then divide by `[a]!` exactly.
    pub fn apply_divided(&self, l: EF, a: u32, v: &ModuleVector) -> Result<ModuleVector> {
        let mut cur = v.clone();
        for _ in 0..a {
            cur = self.apply(l, &cur);
        }
        let fact = crate::scalars::qfact(a);
        cur.iter().map(|c| c.div_exact(&fact)).collect()
    }

    /// Apply a word; the rightmost letter acts first.
    pub fn act_word(&self, word: &[EF], k: usize) -> Result<ModuleVector> {
        if k > self.lambda {
            return Err(Error::IndexOutOfRange(format!(
                "v_{k} in V^{}",
                self.lambda
            )));
        }
        let mut v = self.basis_vector(k);
        for &l in word.iter().rev() {
            v = self.apply(l, &v);
        }
        Ok(v)
    }
}

/// Parse a word over `E`/`F` (whitespace ignored).
pub fn parse_ef_word(s: &str) -> Result<Vec<EF>> {
    s.char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| match c {
            'E' | 'e' => Ok(EF::E),
            'F' | 'f' => Ok(EF::F),
            _ => Err(Error::parse(
                format!("expected E or F, found {c:?}"),
                i,
                i + c.len_utf8(),
            )),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_strand() {
        let q = quotient_dims(1, 3).unwrap();
        assert_eq!(q.dims, BTreeMap::from([(0, 1), (2, 1), (4, 1)]));
        for l in 0..=6 {
            assert_eq!(quotient_dims(1, l).unwrap().total(), l);
        }
    }

    #[test]
    fn two_strands() {
        assert_eq!(quotient_dims(2, 1).unwrap().total(), 0);
        assert_eq!(quotient_dims(2, 2).unwrap().total(), 4);
        assert_eq!(
            quotient_dims(2, 3).unwrap().total(),
            predicted_total(2, 3) as usize
        );
    }

    #[test]
    fn prediction() {
        assert_eq!(predicted_total(2, 2), 4);
        assert_eq!(predicted_total(3, 4), 144);
        assert_eq!(predicted_total(3, 2), 0);
    }

    #[test]
    fn module_relations() {
        for l in 0..=8usize {
            let m = WeightModule::new(l).unwrap();
            for k in 0..=l {
                assert_eq!(
                    m.e_coeff(k),
                    &WeightModule::closed_form_e(l, k),
                    "L={l} k={k}"
                );
                let ef = m.act_word(&[EF::E, EF::F], k).unwrap();
                let fe = m.act_word(&[EF::F, EF::E], k).unwrap();
                let lam = qint(m.weight(k));
                for j in 0..=l {
                    let lhs = &ef[j] - &(&CoveringScalar::pi() * &fe[j]);
                    let rhs = if j == k {
                        lam.clone()
                    } else {
                        CoveringScalar::zero()
                    };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn module_examples() {
        let m1 = WeightModule::new(1).unwrap();
        assert_eq!(m1.e_coeff(1), &CoveringScalar::one());
        let z = vec![CoveringScalar::zero(); 2];
        assert_eq!(m1.act_word(&[EF::E], 0).unwrap(), z);
        assert_eq!(m1.act_word(&[EF::F, EF::E], 0).unwrap(), z);
        assert_eq!(m1.act_word(&[EF::E, EF::F], 0).unwrap(), m1.basis_vector(0));
        let m2 = WeightModule::new(2).unwrap();
        assert_eq!(m2.e_coeff(1), &qint(2));
        let ff = m2.act_word(&[EF::F, EF::F], 0).unwrap();
        assert_eq!(ff[2], qint(2));
        assert_eq!(parse_ef_word("E F e").unwrap(), vec![EF::E, EF::F, EF::E]);
        assert!(parse_ef_word("EX").is_err());
    }
}
