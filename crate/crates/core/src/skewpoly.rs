//! Skew polynomials `x_i x_j = -x_j x_i` (i != j), the symmetric group action and
//! odd divided differences.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
pub type Exps = Vec<u32>;

fn add_c(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("skew polynomial coefficient overflow")
}

fn mul_c(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("skew polynomial coefficient overflow")
}

/// Sign of `x^a x^b = sign * x^{a+b}`: `(-1)^{sum_{i>j} a_i b_j}`.
pub fn mono_sign(a: &[u32], b: &[u32]) -> i64 {
    let mut odd = 0u64;
    let mut prefix = 0u64; // sum_{j<i} b_j
    for i in 0..a.len() {
        odd += a[i] as u64 * prefix;
        prefix += b[i] as u64;
    }
    if odd.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn mono_parity(a: &[u32]) -> u32 {
    a.iter().sum::<u32>() % 2
}

/// An integer combination of skew monomials in `n` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    n: usize,
    terms: BTreeMap<Exps, i64>,
}

impl SkewPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], 1)
    }

    pub fn monomial(exps: Exps, c: i64) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_i` (one-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, i64)> + '_ {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn coeff(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Exps, c: i64) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(exps.len(), self.n);
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = add_c(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.n);
        if c != 0 {
            for (k, v) in &self.terms {
                out.terms.insert(k.clone(), mul_c(*v, c));
            }
        }
        out
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MismatchedVariableCount {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let s = mono_sign(a, b);
                let e: Exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, s * mul_c(*ca, *cb));
            }
        }
        Ok(out)
    }

    /// Left multiplication by `x_i`.
    pub fn mul_var_left(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            // x_i x^a: x_i passes x_1..x_{i-1}
            let pre: u32 = a[..i - 1].iter().sum();
            let mut e = a.clone();
            e[i - 1] += 1;
            out.add_term(e, if pre.is_multiple_of(2) { *c } else { -*c });
        }
        out
    }

    /// Parity of a homogeneous polynomial, `None` if inhomogeneous or zero.
    pub fn parity(&self) -> Option<u32> {
        let mut ps = self.terms.keys().map(|e| mono_parity(e));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    /// Total degree in the x's (the Z-degree is twice this).
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The symmetric-group action `w(x_i) = x_{w(i)}`, extended multiplicatively.
    pub fn act(&self, w: &Permutation) -> Result<Self> {
        if w.n() != self.n {
            return Err(Error::MismatchedVariableCount {
                left: w.n(),
                right: self.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            let (e, s) = act_mono(w, a);
            out.add_term(e, s * c);
        }
        Ok(out)
    }

    /// `s_i` applied to the polynomial.
    pub fn swap(&self, i: usize) -> Self {
        self.act(&Permutation::simple(self.n, i)).expect("same n")
    }

    /// Odd divided difference `d_i`, via the twisted Leibniz rule.
    pub fn oddpartial(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            for (e, v) in partial_mono(i, a).terms {
                out.add_term(e, mul_c(v, *c));
            }
        }
        Ok(out)
    }

    /// Odd divided difference via the closed formula
    /// `((x_{i+1} - x_i) f - (-1)^{p(f)} s_i(f) (x_{i+1} - x_i)) / (x_{i+1}^2 - x_i^2)`.
    pub fn oddpartial_closed(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let n = self.n;
        let diff = Self::var(n, i + 1).sub(&Self::var(n, i))?;
        let mut out = Self::zero(n);
        for (a, c) in &self.terms {
            let f = Self::monomial(a.clone(), *c);
            let sf = f.swap(i);
            let sign = if mono_parity(a) == 0 { 1 } else { -1 };
            let num = diff.mul(&f)?.sub(&sf.mul(&diff)?.scale(sign))?;
            out = out.add(&divide_by_square_difference(&num, i)?)?;
        }
        Ok(out)
    }

    pub fn is_odd_symmetric(&self) -> bool {
        (1..self.n).all(|i| self.oddpartial(i).map(|p| p.is_zero()).unwrap_or(false))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "d{i} needs 1 <= i < n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// All monomials of total x-degree exactly `d`.
    pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exps> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        compositions(&mut cur, 0, d, &mut out);
        out
    }
}

fn compositions(cur: &mut Vec<u32>, k: usize, left: u32, out: &mut Vec<Exps>) {
    if k + 1 == cur.len() {
        cur[k] = left;
        out.push(cur.clone());
        cur[k] = 0;
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for v in (0..=left).rev() {
        cur[k] = v;
        compositions(cur, k + 1, left - v, out);
    }
    cur[k] = 0;
}

/// `w(x^a) = sign * x^e`.
fn act_mono(w: &Permutation, a: &[u32]) -> (Exps, i64) {
    let n = a.len();
    let mut e = vec![0; n];
    let mut odd = 0u64;
    for k in 0..n {
        e[w.apply(k + 1) - 1] = a[k];
        for l in k + 1..n {
            if w.apply(k + 1) > w.apply(l + 1) {
                odd += a[k] as u64 * a[l] as u64;
            }
        }
    }
    (e, if odd.is_multiple_of(2) { 1 } else { -1 })
}

/// `d_i(x^a)` by peeling the first letter: `d_i(x_j g) = d_i(x_j) g - s_i(x_j) d_i(g)`.
fn partial_mono(i: usize, a: &[u32]) -> SkewPoly {
    let n = a.len();
    let Some(j) = a.iter().position(|&v| v > 0) else {
        return SkewPoly::zero(n);
    };
    let j = j + 1;
    let mut g = a.to_vec();
    g[j - 1] -= 1;
    let mut out = SkewPoly::zero(n);
    if j == i || j == i + 1 {
        out.add_term(g.clone(), 1);
    }
    let sj = if j == i {
        i + 1
    } else if j == i + 1 {
        i
    } else {
        j
    };
    let rest = partial_mono(i, &g).mul_var_left(sj);
    for (e, c) in rest.terms {
        out.add_term(e, -c);
    }
    out
}

/// Divide by the central element `x_{i+1}^2 - x_i^2`, asserting exactness.
fn divide_by_square_difference(num: &SkewPoly, i: usize) -> Result<SkewPoly> {
    let n = num.n;
    // reduced monomial -> P(X, Y) as map (a, b) -> c, with X = x_i^2, Y = x_{i+1}^2
    let mut groups: BTreeMap<Exps, BTreeMap<(u32, u32), i64>> = BTreeMap::new();
    for (e, c) in &num.terms {
        let mut red = e.clone();
        let a = e[i - 1] / 2;
        let b = e[i] / 2;
        red[i - 1] %= 2;
        red[i] %= 2;
        *groups.entry(red).or_default().entry((a, b)).or_insert(0) += c;
    }
    let mut out = SkewPoly::zero(n);
    for (red, p) in groups {
        // P as polynomial in Y with coefficients in Z[X]
        let maxb = p.keys().map(|k| k.1).max().unwrap_or(0);
        let mut coeffs: Vec<BTreeMap<u32, i64>> = vec![BTreeMap::new(); maxb as usize + 1];
        for (&(a, b), &c) in &p {
            if c != 0 {
                *coeffs[b as usize].entry(a).or_insert(0) += c;
            }
        }
        // Horner division by (Y - X): q_{k-1} = p_k + X q_k
        let mut q: Vec<BTreeMap<u32, i64>> = vec![BTreeMap::new(); maxb as usize];
        let mut carry: BTreeMap<u32, i64> = BTreeMap::new();
        for k in (0..=maxb as usize).rev() {
            let mut cur = coeffs[k].clone();
            for (&a, &c) in &carry {
                *cur.entry(a + 1).or_insert(0) += c;
            }
            cur.retain(|_, c| *c != 0);
            if k == 0 {
                if !cur.is_empty() {
                    return Err(Error::NonExactDivision(format!(
                        "closed-formula numerator not divisible by x{}^2 - x{}^2",
                        i + 1,
                        i
                    )));
                }
            } else {
                q[k - 1] = cur.clone();
                carry = cur;
            }
        }
        for (b, coeff) in q.iter().enumerate() {
            for (&a, &c) in coeff {
                let mut e = red.clone();
                e[i - 1] += 2 * a;
                e[i] += 2 * b as u32;
                out.add_term(e, c);
            }
        }
    }
    Ok(out)
}

impl SkewPoly {
    /// `{"n": 2, "terms": [{"alpha": [1, 0], "c": -1}]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "terms": self.terms.iter().map(|(a, c)| serde_json::json!({"alpha": a, "c": c})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("bad skew polynomial json".into());
        let n = v.get("n").and_then(|n| n.as_u64()).ok_or_else(bad)? as usize;
        let mut out = Self::zero(n);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let alpha: Exps = serde_json::from_value(t.get("alpha").cloned().ok_or_else(bad)?)
                .map_err(|_| bad())?;
            let c = t.get("c").and_then(|c| c.as_i64()).ok_or_else(bad)?;
            if alpha.len() != n {
                return Err(bad());
            }
            out.add_term(alpha, c);
        }
        Ok(out)
    }
}

impl fmt::Display for SkewPoly {
    /// Text form, e.g. `2*x1^2*x2 - x2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        // higher degree first, then lexicographically larger exponents first
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            let abs = c.unsigned_abs();
            let is_one = e.iter().all(|&v| v == 0);
            if abs != 1 || is_one {
                parts.push(abs.to_string());
            }
            for (k, &v) in e.iter().enumerate() {
                match v {
                    0 => {}
                    1 => parts.push(format!("x{}", k + 1)),
                    v => parts.push(format!("x{}^{v}", k + 1)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let mut f = SkewPoly::zero(3);
        f.add_term(vec![2, 1, 0], 2);
        f.add_term(vec![0, 1, 1], -1);
        assert_eq!(SkewPoly::from_json(&f.to_json()).unwrap(), f);
    }

    fn x(n: usize, i: usize) -> SkewPoly {
        SkewPoly::var(n, i)
    }

    /// Sign of a word of generator letters, by bubble sort.
    fn letter_sort_sign(mut letters: Vec<usize>) -> i64 {
        let mut sign = 1;
        for i in 0..letters.len() {
            for j in 0..letters.len() - 1 - i {
                if letters[j] > letters[j + 1] {
                    letters.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        sign
    }

    #[test]
    fn multiplication_signs() {
        let n = 2;
        assert_eq!(
            x(n, 2).mul(&x(n, 1)).unwrap(),
            SkewPoly::monomial(vec![1, 1], -1)
        );
        assert_eq!(
            x(n, 1).mul(&x(n, 1)).unwrap(),
            SkewPoly::monomial(vec![2, 0], 1)
        );
        let x12 = SkewPoly::monomial(vec![1, 1], 1);
        let expected_sign = letter_sort_sign(vec![1, 2, 1, 2]);
        assert_eq!(expected_sign, -1);
        assert_eq!(
            x12.mul(&x12).unwrap(),
            SkewPoly::monomial(vec![2, 2], expected_sign)
        );
        assert!(matches!(
            x(2, 1).mul(&x(3, 1)),
            Err(Error::MismatchedVariableCount { .. })
        ));
    }

    #[test]
    fn sign_rule_matches_bubble_sort() {
        for a in SkewPoly::monomials_of_degree(3, 3) {
            for b in SkewPoly::monomials_of_degree(3, 2) {
                let mut letters = Vec::new();
                for (k, &v) in a.iter().enumerate() {
                    letters.extend(std::iter::repeat_n(k, v as usize));
                }
                for (k, &v) in b.iter().enumerate() {
                    letters.extend(std::iter::repeat_n(k, v as usize));
                }
                assert_eq!(mono_sign(&a, &b), letter_sort_sign(letters));
            }
        }
    }

    #[test]
    fn action_examples() {
        let s1 = Permutation::simple(2, 1);
        assert_eq!(x(2, 1).act(&s1).unwrap(), x(2, 2));
        let x12 = SkewPoly::monomial(vec![1, 1], 1);
        assert_eq!(x12.act(&s1).unwrap(), x12.scale(-1));
        assert_eq!(x12.act(&Permutation::identity(2)).unwrap(), x12);
    }

    #[test]
    fn action_is_multiplicative() {
        let n = 3;
        for w in Permutation::all(n) {
            for a in SkewPoly::monomials_of_degree(n, 2) {
                for b in SkewPoly::monomials_of_degree(n, 3) {
                    let fa = SkewPoly::monomial(a.clone(), 1);
                    let fb = SkewPoly::monomial(b.clone(), 1);
                    let lhs = fa.mul(&fb).unwrap().act(&w).unwrap();
                    let rhs = fa.act(&w).unwrap().mul(&fb.act(&w).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn partial_examples() {
        let f = SkewPoly::monomial(vec![2, 1], 1);
        assert_eq!(f.oddpartial(1).unwrap(), SkewPoly::monomial(vec![1, 1], 1));
        assert!(SkewPoly::one(2).oddpartial(1).unwrap().is_zero());
        let g = SkewPoly::monomial(vec![2, 0], 1)
            .add(&SkewPoly::monomial(vec![0, 2], 1))
            .unwrap();
        assert!(g.oddpartial(1).unwrap().is_zero());
        assert!(g.oddpartial_closed(1).unwrap().is_zero());
        assert!(f.oddpartial(2).is_err());
    }

    #[test]
    fn leibniz_matches_closed_formula() {
        for n in 2..=4 {
            for d in 0..=6 {
                for a in SkewPoly::monomials_of_degree(n, d) {
                    let f = SkewPoly::monomial(a, 1);
                    for i in 1..n {
                        assert_eq!(f.oddpartial(i).unwrap(), f.oddpartial_closed(i).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn odd_symmetry() {
        assert!(SkewPoly::monomial(vec![1, 1], 1).is_odd_symmetric());
        assert!(!x(2, 1).add(&x(2, 2)).unwrap().is_odd_symmetric());
        assert!(SkewPoly::one(3).is_odd_symmetric());
    }

    #[test]
    fn display() {
        let f = SkewPoly::monomial(vec![2, 1, 0], 2)
            .sub(&SkewPoly::monomial(vec![0, 1, 1], 1))
            .unwrap();
        assert_eq!(f.to_string(), "2*x1^2*x2 - x2*x3");
    }
}
