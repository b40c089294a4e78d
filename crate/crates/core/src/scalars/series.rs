use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{bigint_from_json, bigint_to_json, CoveringScalar, Mono};
use crate::error::{Error, Result};

/// A power series in q (with pi coefficients) known exactly through `cutoff`.
///
/// `min_exp` is a lower bound on the stored q-exponents; it is needed to
/// know how far a product stays exact.
#[derive(Clone)]
pub struct TruncatedSeries {
    cutoff: i64,
    min_exp: i64,
    terms: BTreeMap<Mono, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(cutoff: i64) -> Self {
        Self {
            cutoff,
            min_exp: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cutoff: i64) -> Self {
        Self::from_scalar(&CoveringScalar::one(), cutoff)
    }

    /// A Laurent polynomial viewed as a series, truncated at `cutoff`.
    pub fn from_scalar(s: &CoveringScalar, cutoff: i64) -> Self {
        let mut out = Self {
            cutoff,
            min_exp: s.min_q().unwrap_or(0).min(0),
            terms: BTreeMap::new(),
        };
        for ((e, p), c) in s.terms() {
            if e <= cutoff {
                out.add_term((e, p), c.clone());
            }
        }
        out
    }

    /// `sum_k (pi^pi_power q^step)^k` through `cutoff`, i.e. `(1 - pi^p q^step)^{-1}`.
    pub(crate) fn geometric(step: i64, pi_power: u8, cutoff: i64) -> Self {
        assert!(step > 0);
        let mut out = Self::zero(cutoff);
        let mut k = 0i64;
        while k * step <= cutoff {
            out.add_term((k * step, ((k as u8) * pi_power) & 1), BigInt::one());
            k += 1;
        }
        out
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &BigInt)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, q_exp: i64, pi_exp: u8) -> BigInt {
        self.terms
            .get(&(q_exp, pi_exp & 1))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Mono, c: BigInt) {
        if c.is_zero() || key.0 > self.cutoff {
            return;
        }
        let key = (key.0, key.1 & 1);
        self.min_exp = self.min_exp.min(key.0);
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Drop everything above `cutoff` (which must not exceed the current cutoff).
    pub fn truncate(&self, cutoff: i64) -> Self {
        let mut out = Self {
            cutoff: cutoff.min(self.cutoff),
            min_exp: self.min_exp,
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.cutoff.min(other.cutoff));
        out.min_exp = out.min_exp.min(other.min_exp);
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            cutoff: self.cutoff,
            min_exp: self.min_exp,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Product, exact through `min(cutoff_a + min_b, cutoff_b + min_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = (self.cutoff + other.min_exp).min(other.cutoff + self.min_exp);
        let mut out = Self::zero(cutoff);
        out.min_exp = self.min_exp + other.min_exp;
        for (&(e1, p1), c1) in &self.terms {
            for (&(e2, p2), c2) in &other.terms {
                out.add_term((e1 + e2, (p1 + p2) & 1), c1 * c2);
            }
        }
        out
    }

    /// Multiply by a Laurent polynomial; exactness shifts by its lowest q-power.
    pub fn scale(&self, s: &CoveringScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.cutoff);
        }
        self.mul(&Self::from_scalar(
            s,
            self.cutoff + s.max_q().unwrap_or(0).max(0),
        ))
        .truncate(self.cutoff + s.min_q().unwrap_or(0))
    }

    /// Multiply by `q^k pi^p`.
    pub fn shift(&self, k: i64, p: u8) -> Self {
        let mut out = Self::zero(self.cutoff + k);
        out.min_exp = self.min_exp + k;
        for (&(e, pe), c) in &self.terms {
            out.add_term((e + k, (pe + p) & 1), c.clone());
        }
        out
    }

    /// Equality of the parts both series know exactly, through `through`.
    pub fn agrees_through(&self, other: &Self, through: i64) -> bool {
        if through > self.cutoff || through > other.cutoff {
            return false;
        }
        self.truncate(through).terms == other.truncate(through).terms
    }

    /// Substitute `pi = 1`: `q`-exponent to coefficient.
    pub fn at_pi_one(&self) -> BTreeMap<i64, BigInt> {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(e, _), c) in &self.terms {
            *out.entry(e).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Split into (pi^0 part, pi^1 part) with pi removed from the second.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(self.cutoff);
        let mut odd = Self::zero(self.cutoff);
        even.min_exp = self.min_exp;
        odd.min_exp = self.min_exp;
        for (&(e, p), c) in &self.terms {
            if p == 0 {
                even.add_term((e, 0), c.clone());
            } else {
                odd.add_term((e, 0), c.clone());
            }
        }
        (even, odd)
    }

    /// Polynomial part as a covering scalar (the series truncated at its cutoff).
    pub fn to_scalar(&self) -> CoveringScalar {
        CoveringScalar::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone())))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cutoff": self.cutoff,
            "terms": self.terms.iter().map(|(&(q, pi), c)| serde_json::json!({
                "q": q, "pi": pi, "c": bigint_to_json(c)
            })).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("bad series json".into());
        let cutoff = v.get("cutoff").and_then(|c| c.as_i64()).ok_or_else(bad)?;
        let mut out = Self::zero(cutoff);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let q = t.get("q").and_then(|x| x.as_i64()).ok_or_else(bad)?;
            let pi = t.get("pi").and_then(|x| x.as_u64()).ok_or_else(bad)? as u8;
            let c = t.get("c").and_then(bigint_from_json).ok_or_else(bad)?;
            out.add_term((q, pi), c);
        }
        Ok(out)
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff && self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

impl fmt::Display for TruncatedSeries {
    /// Text form, e.g. `1 + pi q^2 + q^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(q, pi), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || (q == 0 && pi == 0) {
                parts.push(abs.to_string());
            }
            if pi == 1 {
                parts.push("pi".into());
            }
            match q {
                0 => {}
                1 => parts.push("q".into()),
                e => parts.push(format!("q^{e}")),
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[<= q^{}]({self})", self.cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::geom_inverse;

    #[test]
    fn geometric_examples() {
        let g = geom_inverse(1, 1, 8).unwrap();
        assert_eq!(g.to_string(), "1 + pi q^2 + q^4 + pi q^6 + q^8");
        let h = geom_inverse(2, 0, 4).unwrap();
        assert_eq!(h.to_string(), "1 + q^4");
    }

    #[test]
    fn inverse_check() {
        let g = geom_inverse(1, 1, 8).unwrap();
        let one_minus = CoveringScalar::one() - CoveringScalar::monomial(1, 2, 1);
        assert_eq!(g.scale(&one_minus), TruncatedSeries::one(8));
    }

    #[test]
    fn negative_shift_loses_exactness_range() {
        let g = geom_inverse(1, 0, 10).unwrap();
        let s = g.scale(&CoveringScalar::q_pow(-2));
        assert_eq!(s.cutoff(), 8);
        assert_eq!(s.coeff(-2, 0), BigInt::one());
        let t = g.mul(&s);
        assert_eq!(t.cutoff(), 8);
    }

    #[test]
    fn json_roundtrip() {
        let g = geom_inverse(1, 1, 6).unwrap();
        assert_eq!(TruncatedSeries::from_json(&g.to_json()).unwrap(), g);
    }
}
