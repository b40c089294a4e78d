//! Bubble algebra `Xi`, fake bubbles, and graded dimensions of 2-hom spaces.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{CoveringScalar, TruncatedSeries};

mod hom;

pub use hom::{
    cap_degree, char2_consistency, cup_degree, diagram_polynomial, hom_dim_series, hom_dim_total,
    matchings, parse_sequence, realize, ConsistencyReport, CoveringSequence, End, Matching,
    PairingDiagram, Sign,
};

/// Which ground ring the bubble series describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XiMode {
    /// Free rank over `Z`: only even generators survive.
    IntegerFreeRank,
    /// Characteristic 2: all generators are free.
    Char2,
    /// Characteristic other than 2: odd generators square to zero.
    CharNot2,
}

impl XiMode {
    pub const ALL: [XiMode; 3] = [XiMode::IntegerFreeRank, XiMode::Char2, XiMode::CharNot2];

    pub fn name(self) -> &'static str {
        match self {
            XiMode::IntegerFreeRank => "integer_free_rank",
            XiMode::Char2 => "char2",
            XiMode::CharNot2 => "char_not_2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "integer_free_rank" | "z" | "Z" | "integer" => Ok(XiMode::IntegerFreeRank),
            "char2" | "2" => Ok(XiMode::Char2),
            "char_not_2" | "0" | "char0" => Ok(XiMode::CharNot2),
            _ => Err(Error::InvalidArgument(format!(
                "unknown mode {s:?} (expected integer_free_rank, char2 or char_not_2)"
            ))),
        }
    }

    fn allows(self, index: u32, multiplicity: u32) -> bool {
        match self {
            XiMode::IntegerFreeRank => index.is_multiple_of(2),
            XiMode::Char2 => true,
            XiMode::CharNot2 => index.is_multiple_of(2) || multiplicity <= 1,
        }
    }
}

impl fmt::Display for XiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial in generators of degree `2a` and parity `a`, indices ascending.
///
/// Used both for the `z_a` of `Xi` and for formal real bubbles `r_a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SuperMonomial(Vec<u32>);

pub type XiMonomial = SuperMonomial;

impl SuperMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn generator(a: u32) -> Self {
        assert!(a >= 1, "generators are indexed from 1");
        Self(vec![a])
    }

    /// Normalize a word of generators, returning the reordering sign.
    pub fn from_word(word: &[u32]) -> (i64, Self) {
        let mut v = word.to_vec();
        let mut sign = 1;
        // insertion sort, one adjacent swap at a time
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if v[j - 1] % 2 == 1 && v[j] % 2 == 1 {
                    sign = -sign;
                }
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        (sign, Self(v))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        2 * self.0.iter().map(|&a| a as i64).sum::<i64>()
    }

    pub fn parity(&self) -> u8 {
        (self.0.iter().sum::<u32>() % 2) as u8
    }

    pub fn mul(&self, other: &Self) -> (i64, Self) {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Self::from_word(&w)
    }

    fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &a in &self.0 {
            *m.entry(a).or_insert(0) += 1;
        }
        m
    }

    pub fn allowed_in(&self, mode: XiMode) -> bool {
        self.multiplicities()
            .into_iter()
            .all(|(a, k)| mode.allows(a, k))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(a, k)| {
                if k == 1 {
                    format!("{var}_{a}")
                } else {
                    format!("{var}_{a}^{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "z")
    }
}

/// `xi` by its product formula, through `cutoff`.
pub fn xi_series(mode: XiMode, cutoff: i64) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(cutoff);
    // (1 - (pi q^2)^k)^{-1} has q-step 2k and pi-power k
    let inv = |k: i64| TruncatedSeries::geometric(2 * k, (k % 2) as u8, cutoff);
    let mut k = 1;
    while 2 * k <= cutoff {
        match mode {
            XiMode::Char2 => out = out.mul(&inv(k)),
            XiMode::IntegerFreeRank | XiMode::CharNot2 if k % 2 == 0 => out = out.mul(&inv(k)),
            XiMode::CharNot2 => {
                let f = CoveringScalar::one() + CoveringScalar::monomial(1, 2 * k, 1);
                out = out.mul(&TruncatedSeries::from_scalar(&f, cutoff));
            }
            XiMode::IntegerFreeRank => {}
        }
        k += 1;
    }
    out
}

/// All monomials of `Xi` allowed in `mode` with degree at most `cutoff`.
pub fn xi_monomials(mode: XiMode, cutoff: i64) -> Vec<XiMonomial> {
    fn rec(mode: XiMode, budget: i64, min_a: u32, cur: &mut Vec<u32>, out: &mut Vec<XiMonomial>) {
        out.push(SuperMonomial(cur.clone()));
        let mut a = min_a;
        while 2 * a as i64 <= budget {
            cur.push(a);
            let k = cur.iter().filter(|&&b| b == a).count() as u32;
            if mode.allows(a, k) {
                rec(mode, budget - 2 * a as i64, a, cur, out);
            }
            cur.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    if cutoff >= 0 {
        rec(mode, cutoff, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// `xi` by counting monomials per degree and parity.
pub fn xi_series_by_count(mode: XiMode, cutoff: i64) -> TruncatedSeries {
    let mut s = CoveringScalar::zero();
    for m in xi_monomials(mode, cutoff) {
        s += &CoveringScalar::monomial(1, m.degree(), m.parity() as i64);
    }
    TruncatedSeries::from_scalar(&s, cutoff)
}

/// A polynomial in formal real bubbles `r_1, r_2, ...` (ordered products,
/// odd distinct generators anticommute, `r_1^2` is kept).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FakeBubbleExpr {
    terms: BTreeMap<SuperMonomial, i64>,
}

impl FakeBubbleExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(SuperMonomial::one(), 1)
    }

    /// The real bubble `r_a`; `r_0 = 1`.
    pub fn real(a: u32) -> Self {
        if a == 0 {
            Self::one()
        } else {
            Self::monomial(SuperMonomial::generator(a), 1)
        }
    }

    pub fn monomial(m: SuperMonomial, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &SuperMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: SuperMonomial, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot = slot.checked_add(c).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, true)
    }

    fn mul_with(&self, other: &Self, super_signs: bool) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let (s, m) = m1.mul(m2);
                let s = if super_signs { s } else { 1 };
                out.add_term(m, s * c1 * c2);
            }
        }
        out
    }

    /// `{"terms": [{"r": [1, 1], "c": 1}, {"r": [2], "c": -1}]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "terms": self.terms().map(|(m, c)| serde_json::json!({"r": m.indices(), "c": c})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("bad fake bubble json".into());
        let mut out = Self::zero();
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let r: Vec<u32> =
                serde_json::from_value(t.get("r").cloned().ok_or_else(bad)?).map_err(|_| bad())?;
            if r.contains(&0) {
                return Err(bad());
            }
            let c = t.get("c").and_then(|c| c.as_i64()).ok_or_else(bad)?;
            let (s, m) = SuperMonomial::from_word(&r);
            out.add_term(m, s * c);
        }
        Ok(out)
    }

    /// Homogeneous degree, if the expression is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl fmt::Display for FakeBubbleExpr {
    /// Text form, e.g. `r_1^2 - r_2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c < 0;
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if abs != 1 || m.indices().is_empty() {
                write!(f, "{abs}")?;
                if !m.indices().is_empty() {
                    write!(f, "*")?;
                }
            }
            if !m.indices().is_empty() {
                struct R<'a>(&'a SuperMonomial);
                impl fmt::Display for R<'_> {
                    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        self.0.fmt_with(f, "r")
                    }
                }
                write!(f, "{}", R(m))?;
            }
        }
        Ok(())
    }
}

fn solve(m_max: u32, super_signs: bool) -> Vec<FakeBubbleExpr> {
    let mut b = vec![FakeBubbleExpr::one()];
    for m in 1..=m_max {
        // sum_{j=0}^m (-1)^j r_{m-j} B_j = 0, solved for B_m
        let mut acc = FakeBubbleExpr::zero();
        for j in 0..m {
            let t = FakeBubbleExpr::real(m - j).mul_with(&b[j as usize], super_signs);
            acc = acc.add(&t.scale(if j % 2 == 0 { 1 } else { -1 }));
        }
        let sign = if m % 2 == 0 { -1 } else { 1 };
        b.push(acc.scale(sign));
    }
    b
}

/// `B_0, ..., B_{m_max}` from `sum_{j=0}^m (-1)^j r_{m-j} B_j = delta_{m,0}`.
pub fn solve_fake_bubbles(m_max: u32) -> Vec<FakeBubbleExpr> {
    solve(m_max, true)
}

/// The same recursion with all generators commuting (`pi = 1`).
pub fn solve_fake_bubbles_even(m_max: u32) -> Vec<FakeBubbleExpr> {
    solve(m_max, false)
}

/// `sum_{j=0}^m (-1)^j r_{m-j} B_j` for the given list.
pub fn fake_bubble_defect(b: &[FakeBubbleExpr], m: u32) -> FakeBubbleExpr {
    let mut acc = FakeBubbleExpr::zero();
    for j in 0..=m {
        let t = FakeBubbleExpr::real(m - j).mul(&b[j as usize]);
        acc = acc.add(&t.scale(if j % 2 == 0 { 1 } else { -1 }));
    }
    acc
}

/// Whether `B_0..B_{m_max}` satisfy the defining relation identically.
pub fn check_fake_bubbles(b: &[FakeBubbleExpr]) -> bool {
    (0..b.len() as u32).all(|m| {
        let d = fake_bubble_defect(b, m);
        if m == 0 {
            d == FakeBubbleExpr::one()
        } else {
            d.is_zero()
        }
    })
}
