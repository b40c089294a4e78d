//! The idempotented covering algebra in its canonical basis
//! `E^(a)F^(b)1_lam` (lam <= b-a) and `F^(b)E^(a)1_lam` (lam >= b-a).

mod form;

pub use form::{bilinear_form, form_base_value, sesquilinear_form, sesquilinear_form_right};

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::{ModuleVector, WeightModule, EF};
use crate::error::{Error, Result};
use crate::scalars::{qbinom_unchecked, qfact, CoveringScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// `E^(a) F^(b) 1_lam`
    EF,
    /// `F^(b) E^(a) 1_lam`
    FE,
}

/// A canonical basis symbol. `lambda` is the source weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalSymbol {
    pub kind: Kind,
    pub a: u32,
    pub b: u32,
    pub lambda: i64,
}

impl CanonicalSymbol {
    /// The canonical symbol for the monomial `E^(a)F^(b)1_lam` or `F^(b)E^(a)1_lam`
    /// if that monomial is itself canonical (ties go to FE).
    pub fn new(kind: Kind, a: u32, b: u32, lambda: i64) -> Option<Self> {
        let fe = lambda >= b as i64 - a as i64;
        let want = if fe { Kind::FE } else { Kind::EF };
        // a monomial with an empty block is the same element in both kinds
        (kind == want || a == 0 || b == 0).then_some(Self {
            kind: want,
            a,
            b,
            lambda,
        })
    }

    pub fn source(&self) -> i64 {
        self.lambda
    }

    pub fn target(&self) -> i64 {
        self.lambda + 2 * self.a as i64 - 2 * self.b as i64
    }

    /// The letters of the underlying word in order of application, each with its source weight.
    fn letters(&self) -> Vec<(EF, i64)> {
        let mut out = Vec::new();
        let mut w = self.lambda;
        let (first, nfirst, second, nsecond) = match self.kind {
            Kind::EF => (EF::F, self.b, EF::E, self.a),
            Kind::FE => (EF::E, self.a, EF::F, self.b),
        };
        for (l, k) in [(first, nfirst), (second, nsecond)] {
            for _ in 0..k {
                out.push((l, w));
                w += if l == EF::E { 2 } else { -2 };
            }
        }
        out
    }
}

impl fmt::Display for CanonicalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = (self.a > 0).then(|| format!("E({})", self.a));
        let fb = (self.b > 0).then(|| format!("F({})", self.b));
        let body: String = match self.kind {
            Kind::EF => [e, fb],
            Kind::FE => [fb, e],
        }
        .into_iter()
        .flatten()
        .collect();
        let body = if body.is_empty() {
            "1".to_string()
        } else {
            body
        };
        write!(f, "{body}@lam={}", self.lambda)
    }
}

/// A `CoveringScalar` combination of canonical symbols with common source and target.
#[derive(Clone, PartialEq, Eq)]
pub struct CanonicalElement {
    source: i64,
    target: i64,
    terms: BTreeMap<CanonicalSymbol, CoveringScalar>,
}

/// An element written as `sum c F^(b)E^(a)1_lam` (not necessarily canonical).
#[derive(Clone, Debug, PartialEq, Eq)]
struct FeForm {
    source: i64,
    terms: BTreeMap<(u32, u32), CoveringScalar>,
}

impl FeForm {
    fn add(&mut self, b: u32, a: u32, c: CoveringScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((b, a)).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(b, a));
        }
    }
}

/// `E^(a)F^(b)1_lam = sum_t pi^{ab - t(t+1)/2} [a-b+lam; t] F^(b-t)E^(a-t)1_lam`.
pub fn ef_to_fe(a: u32, b: u32, lambda: i64) -> Vec<((u32, u32), CoveringScalar)> {
    (0..=a.min(b))
        .map(|t| {
            let (ai, bi, ti) = (a as i64, b as i64, t as i64);
            let c = &CoveringScalar::pi_pow(ai * bi - ti * (ti + 1) / 2)
                * &qbinom_unchecked(ai - bi + lambda, t);
            ((b - t, a - t), c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// `F^(b)E^(a)1_lam = sum_t pi^{ab + t(t-1)/2 + t lam} [b-a-lam; t] E^(a-t)F^(b-t)1_lam`.
pub fn fe_to_ef(b: u32, a: u32, lambda: i64) -> Vec<((u32, u32), CoveringScalar)> {
    (0..=a.min(b))
        .map(|t| {
            let (ai, bi, ti) = (a as i64, b as i64, t as i64);
            let c = &CoveringScalar::pi_pow(ai * bi + ti * (ti - 1) / 2 + ti * lambda)
                * &qbinom_unchecked(bi - ai - lambda, t);
            ((a - t, b - t), c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

impl CanonicalElement {
    pub fn zero(source: i64, target: i64) -> Self {
        Self {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn idempotent(lambda: i64) -> Self {
        Self::from_symbol(CanonicalSymbol::new(Kind::FE, 0, 0, lambda).unwrap())
    }

    pub fn from_symbol(s: CanonicalSymbol) -> Self {
        Self::from_term(s, CoveringScalar::one())
    }

    pub fn from_term(s: CanonicalSymbol, c: CoveringScalar) -> Self {
        let mut x = Self::zero(s.source(), s.target());
        x.add_term(s, c);
        x
    }

    /// `E^(a)F^(b)1_lam` or `F^(b)E^(a)1_lam` as an element, canonical or not.
    pub fn monomial(kind: Kind, a: u32, b: u32, lambda: i64) -> Self {
        let mut fe = FeForm {
            source: lambda,
            terms: BTreeMap::new(),
        };
        match kind {
            Kind::FE => fe.add(b, a, CoveringScalar::one()),
            Kind::EF => {
                for ((bb, aa), c) in ef_to_fe(a, b, lambda) {
                    fe.add(bb, aa, c);
                }
            }
        }
        canonicalize(&fe, lambda + 2 * a as i64 - 2 * b as i64)
    }

    /// `E^(a) 1_lam`.
    pub fn e(a: u32, lambda: i64) -> Self {
        Self::monomial(Kind::FE, a, 0, lambda)
    }

    /// `F^(b) 1_lam`.
    pub fn f(b: u32, lambda: i64) -> Self {
        Self::monomial(Kind::FE, 0, b, lambda)
    }

    pub fn source(&self) -> i64 {
        self.source
    }

    pub fn target(&self) -> i64 {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalSymbol, &CoveringScalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &CanonicalSymbol) -> CoveringScalar {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, s: CanonicalSymbol, c: CoveringScalar) {
        assert_eq!(
            (s.source(), s.target()),
            (self.source, self.target),
            "weight bookkeeping"
        );
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::WeightMismatch {
                left_source: self.source,
                right_target: other.source,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CoveringScalar) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (s, v) in &self.terms {
            out.add_term(*s, v * c);
        }
        out
    }

    fn to_fe(&self) -> FeForm {
        let mut fe = FeForm {
            source: self.source,
            terms: BTreeMap::new(),
        };
        for (s, c) in &self.terms {
            match s.kind {
                Kind::FE => fe.add(s.b, s.a, c.clone()),
                Kind::EF => {
                    for ((b, a), v) in ef_to_fe(s.a, s.b, s.lambda) {
                        fe.add(b, a, &v * c);
                    }
                }
            }
        }
        fe
    }

    /// Coefficients in the spanning set `E^(a)F^(b)1_lam`, keyed by `(a, b)`.
    pub fn to_ef_form(&self) -> BTreeMap<(u32, u32), CoveringScalar> {
        let mut out: BTreeMap<(u32, u32), CoveringScalar> = BTreeMap::new();
        let mut push = |k: (u32, u32), c: CoveringScalar| {
            let slot = out.entry(k).or_default();
            *slot += &c;
        };
        for (s, c) in &self.terms {
            match s.kind {
                Kind::EF => push((s.a, s.b), c.clone()),
                Kind::FE => {
                    for (k, v) in fe_to_ef(s.b, s.a, s.lambda) {
                        push(k, &v * c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Coefficientwise bar involution (canonical symbols are bar invariant).
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (s, c) in &self.terms {
            out.add_term(*s, c.bar());
        }
        out
    }

    /// The anti-automorphism rho: `rho(E1_lam) = q^{lam+1} 1_lam F`, `rho(1_lam F) = pi^{lam+1} q^{-lam-1} E1_lam`, `rho(q) = pi q`.
    pub fn rho(&self) -> Self {
        self.anti_map(
            |c| c.rho_twist(),
            |l, w| match l {
                EF::E => CoveringScalar::monomial(1, w + 1, 0),
                // F1_w = 1_{w-2}F
                EF::F => CoveringScalar::monomial(1, -(w - 1), w - 1),
            },
        )
    }

    /// The anti-linear anti-automorphism tau: `tau(E1_lam) = pi^{lam+1} q^{-lam-1} 1_lam F`, `tau(1_lam F) = q^{lam+1} E1_lam`, `tau(q) = q^-1`.
    pub fn tau(&self) -> Self {
        self.anti_map(
            |c| c.tau_twist(),
            |l, w| match l {
                EF::E => CoveringScalar::monomial(1, -(w + 1), w + 1),
                EF::F => CoveringScalar::monomial(1, w - 1, 0),
            },
        )
    }

    /// Apply an anti-automorphism that swaps E and F with letter scalars
    /// `letter_scalar(letter, source weight)` and twists coefficients by `twist`.
    fn anti_map(
        &self,
        twist: impl Fn(&CoveringScalar) -> CoveringScalar,
        letter_scalar: impl Fn(EF, i64) -> CoveringScalar,
    ) -> Self {
        let mut out = Self::zero(self.target, self.source);
        for (s, c) in &self.terms {
            let mut k = twist(c);
            for (l, w) in s.letters() {
                k = &k * &letter_scalar(l, w);
            }
            // divided powers: divide by twist([a]![b]!) = pi^{C(a,2)+C(b,2)} [a]![b]!
            let (a, b) = (s.a as i64, s.b as i64);
            k = &k * &CoveringScalar::pi_pow(a * (a - 1) / 2 + b * (b - 1) / 2);
            // reversed word: E^(a)F^(b)1_lam -> 1_lam F^(a)-images ... = E^(b)F^(a)1_target
            let kind = s.kind;
            let img = Self::monomial(kind, s.b, s.a, s.target());
            out = out.add(&img.scale(&k)).expect("weights");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "target": self.target,
            "terms": self.terms.iter().map(|(s, c)| serde_json::json!({
                "symbol": {
                    "kind": match s.kind { Kind::EF => "EF", Kind::FE => "FE" },
                    "a": s.a, "b": s.b, "lam": s.lambda,
                },
                "text": s.to_string(),
                "coeff": c.to_json(),
            })).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("bad canonical element json".into());
        let source = v.get("source").and_then(|x| x.as_i64()).ok_or_else(bad)?;
        let target = v.get("target").and_then(|x| x.as_i64()).ok_or_else(bad)?;
        let mut out = Self::zero(source, target);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let sym = t.get("symbol").ok_or_else(bad)?;
            let kind = match sym.get("kind").and_then(|k| k.as_str()) {
                Some("EF") => Kind::EF,
                Some("FE") => Kind::FE,
                _ => return Err(bad()),
            };
            let a = sym.get("a").and_then(|x| x.as_u64()).ok_or_else(bad)? as u32;
            let b = sym.get("b").and_then(|x| x.as_u64()).ok_or_else(bad)? as u32;
            let lam = sym.get("lam").and_then(|x| x.as_i64()).ok_or_else(bad)?;
            let s = CanonicalSymbol::new(kind, a, b, lam).ok_or_else(bad)?;
            if (s.source(), s.target()) != (source, target) {
                return Err(bad());
            }
            out.add_term(
                s,
                CoveringScalar::from_json(t.get("coeff").ok_or_else(bad)?)?,
            );
        }
        Ok(out)
    }
}

/// Rewrite an FE-form element into canonical symbols.
fn canonicalize(fe: &FeForm, target: i64) -> CanonicalElement {
    let lam = fe.source;
    let mut out = CanonicalElement::zero(lam, target);
    for (&(b, a), c) in &fe.terms {
        if lam >= b as i64 - a as i64 {
            out.add_term(
                CanonicalSymbol {
                    kind: Kind::FE,
                    a,
                    b,
                    lambda: lam,
                },
                c.clone(),
            );
        } else {
            for ((aa, bb), v) in fe_to_ef(b, a, lam) {
                let s = CanonicalSymbol::new(Kind::EF, aa, bb, lam).expect("EF canonical range");
                out.add_term(s, &v * c);
            }
        }
    }
    out
}

/// Product `x y` (apply `y` first). Weights must compose: `source(x) = target(y)`;
/// otherwise the product is zero and `WeightMismatch` is returned.
pub fn multiply(x: &CanonicalElement, y: &CanonicalElement) -> Result<CanonicalElement> {
    if x.source != y.target {
        return Err(Error::WeightMismatch {
            left_source: x.source,
            right_target: y.target,
        });
    }
    let xf = x.to_fe();
    let yf = y.to_fe();
    let lam = y.source;
    let mut out = FeForm {
        source: lam,
        terms: BTreeMap::new(),
    };
    for (&(b1, a1), c1) in &xf.terms {
        for (&(b2, a2), c2) in &yf.terms {
            let c12 = c1 * c2;
            let nu = lam + 2 * a2 as i64;
            for ((bb, aa), v) in ef_to_fe(a1, b2, nu) {
                // F^(b1) F^(bb) and E^(aa) E^(a2)
                let merge = &qbinom_unchecked((b1 + bb) as i64, b1)
                    * &qbinom_unchecked((aa + a2) as i64, a2);
                out.add(b1 + bb, aa + a2, &(&v * &merge) * &c12);
            }
        }
    }
    let result = canonicalize(&out, x.target);
    if cfg!(debug_assertions) && validation_enabled() {
        let expected = oracle_product(x, y, 8);
        assert!(
            oracle_equal_vectors(&result, &expected, 8),
            "multiply disagrees with the V^Lambda oracle for ({x}) * ({y})"
        );
    }
    Ok(result)
}

thread_local! {
    static VALIDATE: std::cell::Cell<bool> = const { std::cell::Cell::new(true) };
}

fn validation_enabled() -> bool {
    VALIDATE.with(|v| v.get())
}

/// Run `f` without the debug-build oracle validation of every product.
pub fn without_validation<T>(f: impl FnOnce() -> T) -> T {
    let old = VALIDATE.with(|v| v.replace(false));
    let out = f();
    VALIDATE.with(|v| v.set(old));
    out
}

/// Action of a canonical element on `v_k` of `V^Lambda`.
pub fn act_on_module(x: &CanonicalElement, m: &WeightModule, k: usize) -> Result<ModuleVector> {
    let mut out = vec![CoveringScalar::zero(); m.lambda + 1];
    if m.weight(k) != x.source {
        return Ok(out);
    }
    for (s, c) in &x.terms {
        let v = m.basis_vector(k);
        let v = match s.kind {
            Kind::EF => m.apply_divided(EF::E, s.a, &m.apply_divided(EF::F, s.b, &v)?)?,
            Kind::FE => m.apply_divided(EF::F, s.b, &m.apply_divided(EF::E, s.a, &v)?)?,
        };
        for (o, vi) in out.iter_mut().zip(v) {
            *o += &(&vi * c);
        }
    }
    Ok(out)
}

type OracleImage = Vec<Vec<ModuleVector>>;

fn oracle_image(x: &CanonicalElement, lambda_max: usize) -> OracleImage {
    (0..=lambda_max)
        .map(|l| {
            let m = WeightModule::new(l).expect("weight module");
            (0..=l)
                .map(|k| act_on_module(x, &m, k).expect("module action"))
                .collect()
        })
        .collect()
}

fn oracle_product(x: &CanonicalElement, y: &CanonicalElement, lambda_max: usize) -> OracleImage {
    (0..=lambda_max)
        .map(|l| {
            let m = WeightModule::new(l).expect("weight module");
            (0..=l)
                .map(|k| {
                    let v = act_on_module(y, &m, k).expect("module action");
                    let mut out = vec![CoveringScalar::zero(); l + 1];
                    for (j, c) in v.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let w = act_on_module(x, &m, j).expect("module action");
                        for (o, wi) in out.iter_mut().zip(w) {
                            *o += &(&wi * c);
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn oracle_equal_vectors(x: &CanonicalElement, img: &OracleImage, lambda_max: usize) -> bool {
    oracle_image(x, lambda_max) == *img
}

/// Do `x` and `y` act identically on every `V^Lambda` with `Lambda <= lambda_max`?
pub fn oracle_equal(x: &CanonicalElement, y: &CanonicalElement, lambda_max: usize) -> bool {
    if x.is_zero() && y.is_zero() {
        return true;
    }
    if (x.source, x.target) != (y.source, y.target) && !(x.is_zero() || y.is_zero()) {
        return false;
    }
    oracle_image(x, lambda_max) == oracle_image(y, lambda_max)
}

/// Does the product `x y` computed symbolically agree with composing the actions?
pub fn oracle_check_product(
    x: &CanonicalElement,
    y: &CanonicalElement,
    lambda_max: usize,
) -> Result<bool> {
    let p = without_validation(|| multiply(x, y))?;
    Ok(oracle_equal_vectors(
        &p,
        &oracle_product(x, y, lambda_max),
        lambda_max,
    ))
}

/// `[a]!` as used in divided powers, exposed for examples.
pub fn divided_power_normalizer(a: u32) -> CoveringScalar {
    qfact(a)
}

impl fmt::Display for CanonicalElement {
    /// Text form, e.g. `(q^-1 + pi*q)*1@lam=2 + pi*F(1)E(1)@lam=2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{s}")?;
            } else if c.len() == 1 {
                write!(f, "{c}*{s}")?;
            } else {
                write!(f, "({c})*{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalElement[{} -> {}]({self})",
            self.source, self.target
        )
    }
}
