use super::{multiply, CanonicalElement};
use crate::error::{Error, Result};
use crate::scalars::{geom_inverse, qbinom_unchecked, CoveringScalar, TruncatedSeries};

/// `<F^(a)1_lam, F^(a)1_lam> = prod_{s=1}^a (1 - pi^s q^{2s})^{-1}`.
pub fn form_base_value(a: u32, cutoff: i64) -> TruncatedSeries {
    (1..=a).fold(TruncatedSeries::one(cutoff), |acc, s| {
        acc.mul(&geom_inverse(s, (s % 2) as u8, cutoff).expect("s >= 1"))
    })
}

/// `t` with `tau(E^(a)1_mu) = t F^(a)1_{mu+2a}`, so `<E^(a)1_mu x, y> = t <x, F^(a) y>`.
fn left_strip_e(a: u32, mu: i64) -> CoveringScalar {
    let img = CanonicalElement::e(a, mu).tau();
    let unit = CanonicalElement::f(a, mu + 2 * a as i64);
    single_coeff(&img, &unit)
}

/// `s` with `<x, E^(a)1_mu y> = s <F^(a) x, y>`: if `tau(F^(a)1_{mu+2a}) = k E^(a)1_mu` then `s = k^-1`.
fn right_strip_e(a: u32, mu: i64) -> CoveringScalar {
    let img = CanonicalElement::f(a, mu + 2 * a as i64).tau();
    let unit = CanonicalElement::e(a, mu);
    let k = single_coeff(&img, &unit);
    CoveringScalar::one()
        .div_exact(&k)
        .expect("tau of a divided power is a unit multiple")
}

fn single_coeff(x: &CanonicalElement, unit: &CanonicalElement) -> CoveringScalar {
    let (sym, one) = unit.terms().next().expect("nonzero unit");
    debug_assert!(one.is_one());
    let c = x.coeff(sym);
    debug_assert_eq!(&unit.scale(&c), x);
    c
}

/// `<F^(b)1_lam, E^(a')F^(b')1_lam>`, moving the `E`s to the left argument.
fn pair_f_with_ef(b: u32, a2: u32, b2: u32, lam: i64, cutoff: i64) -> TruncatedSeries {
    if a2 == 0 {
        return if b == b2 {
            form_base_value(b, cutoff)
        } else {
            TruncatedSeries::zero(cutoff)
        };
    }
    debug_assert_eq!(b2, a2 + b);
    // <F^(b), E^(a') F^(b')> = s <F^(a') F^(b), F^(b')> = s tau_s([a'+b; a']) <F^(b'), F^(b')>
    let s = &right_strip_e(a2, lam - 2 * b2 as i64)
        * &qbinom_unchecked((a2 + b) as i64, a2).tau_twist();
    form_base_value(b2, cutoff).scale(&s)
}

/// `<E^(a')F^(b')1_lam, F^(b)1_lam>`, moving the `E`s to the right argument.
fn pair_ef_with_f(a2: u32, b2: u32, b: u32, lam: i64, cutoff: i64) -> TruncatedSeries {
    if a2 == 0 {
        return if b == b2 {
            form_base_value(b, cutoff)
        } else {
            TruncatedSeries::zero(cutoff)
        };
    }
    debug_assert_eq!(b2, a2 + b);
    let t = &left_strip_e(a2, lam - 2 * b2 as i64) * &qbinom_unchecked((a2 + b) as i64, a2);
    form_base_value(b2, cutoff).scale(&t)
}

fn same_part(x: &CanonicalElement, y: &CanonicalElement) -> bool {
    x.source() == y.source() && x.target() == y.target()
}

fn with_margin(cutoff: i64, f: impl Fn(i64) -> Result<TruncatedSeries>) -> Result<TruncatedSeries> {
    let mut margin = 32;
    for _ in 0..8 {
        let s = f(cutoff + margin)?;
        if s.cutoff() >= cutoff {
            return Ok(s.truncate(cutoff));
        }
        margin *= 2;
    }
    Err(Error::NonTerminatingReduction(
        "form evaluation could not reach the requested cutoff".into(),
    ))
}

/// The sesquilinear form, reducing by stripping `E`s from the left argument.
///
/// Scalars leave the left argument twisted by `q -> q^-1` and the right one
/// untouched, and `<u x, y> = <x, tau(u) y>`.
///
/// `<c E^(a)F^(b)1_lam, y> = c' t <F^(b)1_lam, F^(a) y>` with `c'` the twist of `c`; then the right
/// side is rewritten in the `E^(a')F^(b')` spanning set and its `E`s are
/// stripped back to the left until both sides are pure `F` divided powers.
pub fn sesquilinear_form(
    x: &CanonicalElement,
    y: &CanonicalElement,
    cutoff: i64,
) -> Result<TruncatedSeries> {
    if !same_part(x, y) {
        return Ok(TruncatedSeries::zero(cutoff));
    }
    let lam = x.source();
    with_margin(cutoff, |work| {
        let mut total = TruncatedSeries::zero(work);
        for ((a, b), c) in x.to_ef_form() {
            let t = left_strip_e(a, lam - 2 * b as i64);
            let z = multiply(&CanonicalElement::f(a, y.target()), y)?;
            if z.target() != lam - 2 * b as i64 {
                return Err(Error::NonTerminatingReduction("weight bookkeeping".into()));
            }
            let mut inner = TruncatedSeries::zero(work);
            for ((a2, b2), d) in z.to_ef_form() {
                inner = inner.add(&pair_f_with_ef(b, a2, b2, lam, work).scale(&d));
            }
            total = total.add(&inner.scale(&(&c.tau_twist() * &t)));
        }
        Ok(total)
    })
}

/// The same form, reducing by stripping `E`s from the right argument.
pub fn sesquilinear_form_right(
    x: &CanonicalElement,
    y: &CanonicalElement,
    cutoff: i64,
) -> Result<TruncatedSeries> {
    if !same_part(x, y) {
        return Ok(TruncatedSeries::zero(cutoff));
    }
    let lam = y.source();
    with_margin(cutoff, |work| {
        let mut total = TruncatedSeries::zero(work);
        for ((a, b), d) in y.to_ef_form() {
            let s = right_strip_e(a, lam - 2 * b as i64);
            let w = multiply(&CanonicalElement::f(a, x.target()), x)?;
            if w.target() != lam - 2 * b as i64 {
                return Err(Error::NonTerminatingReduction("weight bookkeeping".into()));
            }
            let mut inner = TruncatedSeries::zero(work);
            for ((a2, b2), c) in w.to_ef_form() {
                inner = inner.add(&pair_ef_with_f(a2, b2, b, lam, work).scale(&c.tau_twist()));
            }
            total = total.add(&inner.scale(&(&d * &s)));
        }
        Ok(total)
    })
}

/// The symmetric bilinear form `(x, y) = bar(<x, bar y>)`.
///
/// The result is a power series in `q^-1`; the returned series stores the
/// coefficient of `q^-k` at exponent `k`.
pub fn bilinear_form(
    x: &CanonicalElement,
    y: &CanonicalElement,
    cutoff: i64,
) -> Result<TruncatedSeries> {
    let s = sesquilinear_form(x, &y.bar(), cutoff)?;
    // bar(c q^e pi^p) = c pi^{p+e} q^{-e}
    let mut out = CoveringScalar::zero();
    for ((e, p), c) in s.terms() {
        out += &CoveringScalar::monomial(c.clone(), e, p as i64 + e);
    }
    Ok(TruncatedSeries::from_scalar(&out, s.cutoff()))
}
