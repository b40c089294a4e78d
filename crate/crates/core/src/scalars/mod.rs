//! The ground ring `Z[q, q^-1, pi] / (pi^2 - 1)` and its (q, pi)-combinatorics.

mod series;

pub use series::TruncatedSeries;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monomial key: (exponent of q, exponent of pi reduced mod 2).
pub type Mono = (i64, u8);

/// An element of `A_pi = Z[q, q^-1, pi] / (pi^2 - 1)`.
///
/// Stored as a sparse map from `(q_exp, pi_exp)` to a nonzero integer. The
/// map ordering is the canonical `(q, pi)` ascending order used by the text
/// and JSON forms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoveringScalar {
    terms: BTreeMap<Mono, BigInt>,
}

impl CoveringScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero();
        s.add_term((0, 0), c.into());
        s
    }

    /// `c * q^q_exp * pi^pi_exp`.
    pub fn monomial(c: impl Into<BigInt>, q_exp: i64, pi_exp: i64) -> Self {
        let mut s = Self::zero();
        s.add_term((q_exp, pi_exp.rem_euclid(2) as u8), c.into());
        s
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn pi() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `pi^k` for any integer `k`.
    pub fn pi_pow(k: i64) -> Self {
        Self::monomial(1, 0, k)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (key.0, key.1 & 1);
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in it {
            s.add_term(k, c);
        }
        s
    }

    pub fn min_q(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_q(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// True if every coefficient is nonnegative, i.e. the element lies in `N[q, q^-1, pi]`.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Apply a ring endomorphism determined by where `q` goes: `q -> pi^a q^b` with `b = +-1`.
    fn substitute_q(&self, pi_per_q: i64, q_sign: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(e, p), c)| {
            (
                (q_sign * e, ((p as i64 + pi_per_q * e).rem_euclid(2)) as u8),
                c.clone(),
            )
        }))
    }

    /// Bar involution: `q -> pi q^-1`, `pi -> pi`.
    pub fn bar(&self) -> Self {
        self.substitute_q(1, -1)
    }

    /// The scalar part of the anti-automorphism rho: `q -> pi q`.
    pub fn rho_twist(&self) -> Self {
        self.substitute_q(1, 1)
    }

    /// The scalar part of tau = bar . rho: `q -> q^-1`.
    pub fn tau_twist(&self) -> Self {
        self.substitute_q(0, -1)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// If the element is a single monomial `+-1 * q^e pi^p`, return `(sign, e, p)`.
    fn as_unit_monomial(&self) -> Option<(i64, i64, u8)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(e, p), c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, e, p))
        } else if (-c).is_one() {
            Some((-1, e, p))
        } else {
            None
        }
    }

    /// The coefficient (in `Z[pi]/(pi^2-1)`) of `q^e`, as a scalar with only `q^0` terms.
    fn q_slice(&self, e: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((qe, _), _)| *qe == e)
                .map(|(&(_, p), c)| ((0, p), c.clone())),
        )
    }

    /// Exact division in `A_pi`.
    ///
    /// Long division from the top q-degree (or the bottom one) of the divisor,
    /// which must carry a unit coefficient `+-pi^k` there. Any remainder is an
    /// error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::NonExactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dtop = divisor.max_q().unwrap();
        let dbot = divisor.min_q().unwrap();
        let top_unit = divisor.q_slice(dtop).as_unit_monomial();
        let bot_unit = divisor.q_slice(dbot).as_unit_monomial();
        let (from_top, unit) = match (top_unit, bot_unit) {
            (Some(u), _) => (true, u),
            (None, Some(u)) => (false, u),
            (None, None) => {
                return Err(Error::NonExactDivision(format!(
                    "divisor {divisor} has no unit extreme coefficient"
                )))
            }
        };
        let span = dtop - dbot;
        // unit inverse: (+-pi^p)^-1 = +-pi^p
        let inv = Self::monomial(unit.0, 0, unit.2 as i64);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rtop = rem.max_q().unwrap();
            let rbot = rem.min_q().unwrap();
            if rtop - rbot < span {
                return Err(Error::NonExactDivision(format!("{self} / {divisor}")));
            }
            let (shift, lead) = if from_top {
                (rtop - dtop, rem.q_slice(rtop))
            } else {
                (rbot - dbot, rem.q_slice(rbot))
            };
            let t = &(&lead * &inv) * &Self::q_pow(shift);
            rem -= &(&t * divisor);
            quot += &t;
        }
        Ok(quot)
    }

    /// Substitute `pi = pi_value` and, optionally, a rational value for `q`.
    pub fn specialize(&self, pi_value: i8, q_value: Option<&BigRational>) -> Specialized {
        let sign = |p: u8| -> BigInt {
            if p == 1 && pi_value < 0 {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        };
        let mut laurent: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(e, p), c) in &self.terms {
            *laurent.entry(e).or_insert_with(BigInt::zero) += c * sign(p);
        }
        laurent.retain(|_, c| !c.is_zero());
        match q_value {
            None => Specialized::Laurent(laurent),
            Some(qv) => {
                let mut total = BigRational::zero();
                for (e, c) in laurent {
                    let base = if e >= 0 { qv.clone() } else { qv.recip() };
                    let mut pw = BigRational::one();
                    for _ in 0..e.unsigned_abs() {
                        pw *= &base;
                    }
                    total += pw * BigRational::from_integer(c);
                }
                Specialized::Number(total)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ScalarJson::from(self)).expect("scalar json")
    }

    /// Compact JSON text with keys in schema order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&ScalarJson::from(self)).expect("scalar json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ScalarJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidArgument(format!("bad scalar json: {e}")))?;
        Ok(Self::from(&j))
    }
}

/// Result of [`CoveringScalar::specialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialized {
    /// A Laurent polynomial in q over Z, keyed by exponent.
    Laurent(BTreeMap<i64, BigInt>),
    Number(BigRational),
}

impl fmt::Display for Specialized {
    /// `q^-1 + 1` for a Laurent polynomial, `3/2` for a number.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialized::Laurent(m) => {
                let s = CoveringScalar::from_terms(m.iter().map(|(e, c)| ((*e, 0), c.clone())));
                write!(f, "{s}")
            }
            Specialized::Number(r) => write!(f, "{r}"),
        }
    }
}

impl Specialized {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Specialized::Laurent(m) => serde_json::json!({
                "laurent": m.iter().map(|(e, c)| serde_json::json!({"q": e, "c": bigint_to_json(c)})).collect::<Vec<_>>()
            }),
            Specialized::Number(r) => serde_json::json!({"number": r.to_string()}),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub q: i64,
    pub pi: u8,
    pub c: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    terms: Vec<TermJson>,
}

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl From<&CoveringScalar> for ScalarJson {
    fn from(s: &CoveringScalar) -> Self {
        ScalarJson {
            terms: s
                .terms
                .iter()
                .map(|(&(q, pi), c)| TermJson {
                    q,
                    pi,
                    c: bigint_to_json(c),
                })
                .collect(),
        }
    }
}

impl From<&ScalarJson> for CoveringScalar {
    fn from(j: &ScalarJson) -> Self {
        CoveringScalar::from_terms(
            j.terms
                .iter()
                .map(|t| ((t.q, t.pi), bigint_from_json(&t.c).unwrap_or_default())),
        )
    }
}

pub(crate) fn fmt_monomial_star(f: &mut fmt::Formatter<'_>, q: i64, pi: u8) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if pi == 1 {
        parts.push("pi".into());
    }
    match q {
        0 => {}
        1 => parts.push("q".into()),
        e => parts.push(format!("q^{e}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for CoveringScalar {
    /// Text form, e.g. `q^-1 + pi*q`.
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
            let unit = q == 0 && pi == 0;
            if unit {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial_star(f, q, pi)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CoveringScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoveringScalar({self})")
    }
}

impl<'a> Add<&'a CoveringScalar> for &'a CoveringScalar {
    type Output = CoveringScalar;
    fn add(self, rhs: &CoveringScalar) -> CoveringScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoveringScalar {
    type Output = CoveringScalar;
    fn add(mut self, rhs: CoveringScalar) -> CoveringScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&CoveringScalar> for CoveringScalar {
    fn add_assign(&mut self, rhs: &CoveringScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&CoveringScalar> for CoveringScalar {
    fn sub_assign(&mut self, rhs: &CoveringScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c);
        }
    }
}

impl<'a> Sub<&'a CoveringScalar> for &'a CoveringScalar {
    type Output = CoveringScalar;
    fn sub(self, rhs: &CoveringScalar) -> CoveringScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for CoveringScalar {
    type Output = CoveringScalar;
    fn sub(mut self, rhs: CoveringScalar) -> CoveringScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &CoveringScalar {
    type Output = CoveringScalar;
    fn neg(self) -> CoveringScalar {
        CoveringScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for CoveringScalar {
    type Output = CoveringScalar;
    fn neg(self) -> CoveringScalar {
        -&self
    }
}

impl<'a> Mul<&'a CoveringScalar> for &'a CoveringScalar {
    type Output = CoveringScalar;
    fn mul(self, rhs: &CoveringScalar) -> CoveringScalar {
        let mut out = CoveringScalar::zero();
        for (&(e1, p1), c1) in &self.terms {
            for (&(e2, p2), c2) in &rhs.terms {
                out.add_term((e1 + e2, (p1 + p2) & 1), c1 * c2);
            }
        }
        out
    }
}

impl Mul for CoveringScalar {
    type Output = CoveringScalar;
    fn mul(self, rhs: CoveringScalar) -> CoveringScalar {
        &self * &rhs
    }
}

impl Zero for CoveringScalar {
    fn zero() -> Self {
        CoveringScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for CoveringScalar {
    fn one() -> Self {
        CoveringScalar::one()
    }
}

/// The (q, pi)-integer `[n]`.
///
/// For `n > 0` this is `sum_{k=0}^{n-1} pi^k q^{2k-n+1}`; `[0] = 0` and
/// `[-n] = -pi^n [n]`.
pub fn qint(n: i64) -> CoveringScalar {
    if n == 0 {
        return CoveringScalar::zero();
    }
    if n < 0 {
        return -(&CoveringScalar::pi_pow(-n) * &qint(-n));
    }
    CoveringScalar::from_terms((0..n).map(|k| ((2 * k - n + 1, (k & 1) as u8), BigInt::one())))
}

/// `[n]` computed as the quotient `((pi q)^n - q^-n) / (pi q - q^-1)` by long
/// division. Used to cross-check [`qint`].
pub fn qint_by_division(n: i64) -> Result<CoveringScalar> {
    let pq = CoveringScalar::monomial(1, 1, 1);
    let num = if n >= 0 {
        &pq.pow(n as u32) - &CoveringScalar::q_pow(-n)
    } else {
        // (pi q)^n = pi^n q^n for negative n as well
        &CoveringScalar::monomial(1, n, n) - &CoveringScalar::q_pow(-n)
    };
    let den = &pq - &CoveringScalar::q_pow(-1);
    num.div_exact(&den)
}

pub fn qfact(n: u32) -> CoveringScalar {
    (1..=n as i64).fold(CoveringScalar::one(), |acc, i| &acc * &qint(i))
}

/// `prod_{i=1}^a [n+i-a] / [a]!`, valid for every integer `n`.
pub fn qbinom(n: i64, a: u32) -> Result<CoveringScalar> {
    let a_i = a as i64;
    let num = (1..=a_i).fold(CoveringScalar::one(), |acc, i| &acc * &qint(n + i - a_i));
    num.div_exact(&qfact(a))
}

/// Like [`qbinom`] but panics on a non-exact division, which can only happen on a bug.
pub fn qbinom_unchecked(n: i64, a: u32) -> CoveringScalar {
    qbinom(n, a).unwrap_or_else(|e| panic!("internal: qbinom({n},{a}): {e}"))
}

pub fn bar(s: &CoveringScalar) -> CoveringScalar {
    s.bar()
}

/// Expansion of `(1 - pi^pi_power q^{2s})^{-1}` through q-degree `cutoff`.
pub fn geom_inverse(s: u32, pi_power: u8, cutoff: i64) -> Result<TruncatedSeries> {
    if s == 0 {
        return Err(Error::InvalidArgument("geom_inverse needs s >= 1".into()));
    }
    Ok(TruncatedSeries::geometric(2 * s as i64, pi_power, cutoff))
}
