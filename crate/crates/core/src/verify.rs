//! The invariant suite behind `verify all`: each check is a claim, a
//! pass/fail flag and its wall time.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bubbles::{
    char2_consistency, check_fake_bubbles, hom_dim_total, parse_sequence, solve_fake_bubbles,
    xi_series, FakeBubbleExpr, XiMode,
};
use crate::cyclotomic::{predicted_total, quotient_dims, WeightModule, EF};
use crate::error::Result;
use crate::onh::{
    decomposition_prediction, e_idempotent, graded_dim_left_ideal, graded_dim_onh, normal_form,
    normal_form_combination, Letter, OnhWord,
};
use crate::scalars::{geom_inverse, qbinom, qfact, qint, CoveringScalar};
use crate::skewpoly::SkewPoly;
use crate::udot::{multiply, oracle_check_product, sesquilinear_form, CanonicalElement, Kind};

/// One row of the verification matrix.
#[derive(Clone, Debug)]
pub struct Check {
    pub key: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

/// Problem sizes: `full` is the acceptance scale, otherwise a quicker pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub full: bool,
}

impl Scale {
    fn pick<T>(self, full: T, quick: T) -> T {
        if self.full {
            full
        } else {
            quick
        }
    }
}

type CheckFn = fn(Scale) -> Result<(bool, String)>;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("qint", "[-n] = -pi^n [n] and bar[n] = [n]", check_qint),
    (
        "qbinom",
        "[n;a] lies in N[q,q^-1,pi] and equals [n]!/([a]![n-a]!)",
        check_qbinom,
    ),
    (
        "onh-relations",
        "odd nilHecke relations hold as operators on SPol_n",
        check_onh_relations,
    ),
    (
        "normal-form",
        "normal forms act like the words they came from",
        check_normal_form,
    ),
    ("idempotent", "e_n^2 = e_n", check_idempotent),
    (
        "decomposition",
        "ONH_n is [n]! shifted copies of ONH_n e_n",
        check_decomposition,
    ),
    (
        "cyclotomic",
        "dim ONH_n^Lambda = (n!)^2 C(Lambda, n)",
        check_cyclotomic,
    ),
    (
        "covering-relation",
        "EF - pi FE = [lam] on V^Lambda",
        check_covering_relation,
    ),
    (
        "udot-product",
        "U-dot products: associative, positive, faithful on V^Lambda",
        check_udot,
    ),
    ("form", "<F1,F1> = <E1,E1> = (1 - pi q^2)^-1", check_form),
    (
        "fake-bubbles",
        "fake bubbles solve the infinite Grassmannian relation",
        check_fake,
    ),
    (
        "hom-dims",
        "hom enumerator: empty = xi, one strand, adjunction",
        check_hom,
    ),
];

/// Keys of all checks, in order.
pub fn keys() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Run the checks whose key is in `only` (all when `only` is empty).
pub fn run(scale: Scale, only: &[String]) -> Vec<Check> {
    CHECKS
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|k| k == c.0))
        .map(|&(key, claim, f)| {
            let t = Instant::now();
            let (passed, detail) = match f(scale) {
                Ok(v) => v,
                Err(e) => (false, e.to_string()),
            };
            Check {
                key,
                claim,
                passed,
                detail,
                millis: t.elapsed().as_millis(),
            }
        })
        .collect()
}

fn ok(passed: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((passed, detail.into()))
}

fn check_qint(_: Scale) -> Result<(bool, String)> {
    for n in 1..=20i64 {
        if qint(-n) != -(&CoveringScalar::pi_pow(n) * &qint(n)) || qint(n).bar() != qint(n) {
            return ok(false, format!("fails at n = {n}"));
        }
    }
    ok(true, "1 <= n <= 20")
}

fn check_qbinom(s: Scale) -> Result<(bool, String)> {
    let top = s.pick(12, 8);
    for n in 0..=top {
        for a in 0..=n {
            let b = qbinom(n as i64, a)?;
            let quot = qfact(n).div_exact(&(&qfact(a) * &qfact(n - a)))?;
            if !b.is_nonnegative() || b != quot {
                return ok(false, format!("fails at [{n};{a}]"));
            }
        }
    }
    ok(true, format!("0 <= a <= n <= {top}"))
}

pub(crate) fn monomials_up_to(n: usize, maxdeg: u32) -> Vec<SkewPoly> {
    (0..=maxdeg)
        .flat_map(|d| SkewPoly::monomials_of_degree(n, d))
        .map(|e| SkewPoly::monomial(e, 1))
        .collect()
}

fn word(n: usize, letters: &[Letter]) -> OnhWord {
    OnhWord::new(n, letters.to_vec()).expect("indices in range")
}

/// Left side minus right side of every relation instance, as word combinations.
pub fn onh_relation_instances(n: usize) -> Vec<(&'static str, Vec<(i64, OnhWord)>)> {
    use Letter::{D, X};
    let mut out = Vec::new();
    let w = |l: &[Letter]| word(n, l);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((
                    "x_i x_j + x_j x_i",
                    vec![(1, w(&[X(i), X(j)])), (1, w(&[X(j), X(i)]))],
                ));
            }
        }
    }
    for i in 1..n {
        out.push(("d_i^2", vec![(1, w(&[D(i), D(i)]))]));
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                out.push((
                    "d_i d_j + d_j d_i",
                    vec![(1, w(&[D(i), D(j)])), (1, w(&[D(j), D(i)]))],
                ));
            }
        }
        if i + 1 < n {
            out.push((
                "d_i d_i+1 d_i - d_i+1 d_i d_i+1",
                vec![
                    (1, w(&[D(i), D(i + 1), D(i)])),
                    (-1, w(&[D(i + 1), D(i), D(i + 1)])),
                ],
            ));
        }
        for j in 1..=n {
            if j != i && j != i + 1 {
                out.push((
                    "d_i x_j + x_j d_i",
                    vec![(1, w(&[D(i), X(j)])), (1, w(&[X(j), D(i)]))],
                ));
            }
        }
        out.push((
            "x_i d_i + d_i x_i+1 - 1",
            vec![
                (1, w(&[X(i), D(i)])),
                (1, w(&[D(i), X(i + 1)])),
                (-1, w(&[])),
            ],
        ));
        out.push((
            "d_i x_i + x_i+1 d_i - 1",
            vec![
                (1, w(&[D(i), X(i)])),
                (1, w(&[X(i + 1), D(i)])),
                (-1, w(&[])),
            ],
        ));
        out.push((
            "d_i (x_i^2 + x_i+1^2) - (x_i^2 + x_i+1^2) d_i",
            vec![
                (1, w(&[D(i), X(i), X(i)])),
                (1, w(&[D(i), X(i + 1), X(i + 1)])),
                (-1, w(&[X(i), X(i), D(i)])),
                (-1, w(&[X(i + 1), X(i + 1), D(i)])),
            ],
        ));
    }
    out
}

/// Apply a word combination to `f` as an operator.
pub fn act_combination(combo: &[(i64, OnhWord)], f: &SkewPoly) -> Result<SkewPoly> {
    let mut acc = SkewPoly::zero(f.n());
    for (c, w) in combo {
        acc = acc.add(&w.act(f)?.scale(*c))?;
    }
    Ok(acc)
}

fn check_onh_relations(s: Scale) -> Result<(bool, String)> {
    let maxdeg = s.pick(8, 5);
    let mut count = 0;
    for n in 1..=4 {
        let monos = monomials_up_to(n, maxdeg);
        for (name, combo) in onh_relation_instances(n) {
            for m in &monos {
                if !act_combination(&combo, m)?.is_zero() {
                    return ok(false, format!("{name} fails on {m} (n = {n})"));
                }
            }
            if !normal_form_combination(n, &combo)?.is_zero() {
                return ok(false, format!("{name} does not normalize to 0 (n = {n})"));
            }
            count += 1;
        }
    }
    ok(
        true,
        format!("{count} relation instances, degree <= {maxdeg}, n <= 4"),
    )
}

/// A random word of length at most `max_len` in `ONH_n`.
pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> OnhWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            if n > 1 && rng.gen_bool(0.5) {
                Letter::D(rng.gen_range(1..n))
            } else {
                Letter::X(rng.gen_range(1..=n))
            }
        })
        .collect();
    word(n, &letters)
}

fn check_normal_form(s: Scale) -> Result<(bool, String)> {
    let trials = s.pick(500, 60);
    let mut rng = ChaCha8Rng::seed_from_u64(0xdd512);
    let monos: Vec<Vec<SkewPoly>> = (0..=4).map(|n| monomials_up_to(n.max(1), 6)).collect();
    for _ in 0..trials {
        let n = rng.gen_range(1..=4);
        let w = random_word(&mut rng, n, 8);
        let nf = normal_form(&w);
        for m in &monos[n] {
            if nf.act(m)? != w.act(m)? {
                return ok(false, format!("{w:?} on {m}"));
            }
        }
    }
    ok(true, format!("{trials} random words, n <= 4, length <= 8"))
}

fn check_idempotent(_: Scale) -> Result<(bool, String)> {
    for n in 1..=4 {
        let e = e_idempotent(n);
        if e.mul(&e)? != e {
            return ok(false, format!("n = {n}"));
        }
    }
    ok(true, "n <= 4")
}

fn check_decomposition(_: Scale) -> Result<(bool, String)> {
    let cutoff = 10;
    for n in 1..=3usize {
        let c2 = (n * (n - 1) / 2) as i64;
        let ideal = graded_dim_left_ideal(&e_idempotent(n), cutoff + 2 * c2)?;
        let pred = decomposition_prediction(n, &ideal);
        if !pred.agrees_through(&graded_dim_onh(n, cutoff), cutoff) {
            return ok(false, format!("n = {n}"));
        }
    }
    ok(true, format!("n <= 3 through q^{cutoff}"))
}

fn check_cyclotomic(s: Scale) -> Result<(bool, String)> {
    let lmax = s.pick(4, 3);
    for n in 1..=3 {
        for l in 0..=lmax {
            let q = quotient_dims(n, l)?;
            if q.total() as u128 != predicted_total(n, l) {
                return ok(false, format!("n = {n}, Lambda = {l}: {} total", q.total()));
            }
        }
    }
    ok(true, format!("n <= 3, Lambda <= {lmax}"))
}

fn check_covering_relation(_: Scale) -> Result<(bool, String)> {
    for l in 0..=8usize {
        let m = WeightModule::new(l)?;
        for k in 0..=l {
            let ef = m.act_word(&[EF::E, EF::F], k)?;
            let fe = m.act_word(&[EF::F, EF::E], k)?;
            for j in 0..=l {
                let lhs = &ef[j] - &(&CoveringScalar::pi() * &fe[j]);
                let rhs = if j == k {
                    qint(m.weight(k))
                } else {
                    CoveringScalar::zero()
                };
                if lhs != rhs {
                    return ok(false, format!("Lambda = {l}, v_{k}"));
                }
            }
        }
    }
    ok(true, "every v_k of V^Lambda, Lambda <= 8")
}

/// A random canonical basis element with source `lambda`, `a, b <= 3`.
pub fn random_canonical(rng: &mut impl Rng, lambda: i64) -> CanonicalElement {
    let a = rng.gen_range(0..=3);
    let b = rng.gen_range(0..=3);
    let kind = if lambda >= b as i64 - a as i64 {
        Kind::FE
    } else {
        Kind::EF
    };
    CanonicalElement::monomial(kind, a, b, lambda)
}

/// A composable random triple `(x, y, z)` with all weights in `[-6, 6]`.
pub fn random_triple(rng: &mut impl Rng) -> (CanonicalElement, CanonicalElement, CanonicalElement) {
    loop {
        let lam = rng.gen_range(-6..=6);
        let z = random_canonical(rng, lam);
        let y = random_canonical(rng, z.target());
        let x = random_canonical(rng, y.target());
        if [z.target(), y.target(), x.target()]
            .iter()
            .all(|t| t.abs() <= 6)
        {
            return (x, y, z);
        }
    }
}

fn all_nonnegative(x: &CanonicalElement) -> bool {
    x.terms().all(|(_, c)| c.is_nonnegative())
}

fn check_udot(s: Scale) -> Result<(bool, String)> {
    let trials = s.pick(200, 40);
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_7e12);
    for _ in 0..trials {
        let (x, y, z) = random_triple(&mut rng);
        let xy = multiply(&x, &y)?;
        let yz = multiply(&y, &z)?;
        if multiply(&xy, &z)? != multiply(&x, &yz)? {
            return ok(false, format!("associativity: {x}, {y}, {z}"));
        }
        if !all_nonnegative(&xy) || !all_nonnegative(&yz) {
            return ok(false, format!("positivity: {x}, {y}, {z}"));
        }
        if !oracle_check_product(&x, &y, 12)? || !oracle_check_product(&y, &z, 12)? {
            return ok(false, format!("module oracle: {x}, {y}, {z}"));
        }
    }
    ok(
        true,
        format!("{trials} random triples, |lam| <= 6, a, b <= 3"),
    )
}

fn check_form(_: Scale) -> Result<(bool, String)> {
    let g = geom_inverse(1, 1, 20)?;
    for lam in -6..=6 {
        let f = CanonicalElement::f(1, lam);
        let e = CanonicalElement::e(1, lam);
        if sesquilinear_form(&f, &f, 20)? != g || sesquilinear_form(&e, &e, 20)? != g {
            return ok(false, format!("lam = {lam}"));
        }
    }
    ok(true, "|lam| <= 6 through q^20")
}

fn check_fake(_: Scale) -> Result<(bool, String)> {
    let b = solve_fake_bubbles(10);
    let examples = b[0] == FakeBubbleExpr::one()
        && b[1] == FakeBubbleExpr::real(1)
        && b[2]
            == FakeBubbleExpr::real(1)
                .mul(&FakeBubbleExpr::real(1))
                .add(&FakeBubbleExpr::real(2).scale(-1));
    ok(examples && check_fake_bubbles(&b), "B_0..B_10")
}

fn check_hom(_: Scale) -> Result<(bool, String)> {
    let empty = parse_sequence("")?;
    let plus = parse_sequence("+")?;
    for mode in XiMode::ALL {
        let xi = xi_series(mode, 16);
        if hom_dim_total(&empty, &empty, 0, mode, 16) != xi {
            return ok(false, format!("empty, {mode}"));
        }
        let strand = xi.mul(&geom_inverse(1, 1, 16)?);
        if hom_dim_total(&plus, &plus, 0, mode, 16) != strand {
            return ok(false, format!("one strand, {mode}"));
        }
    }
    for (lo, up, lam) in adjunction_cases() {
        let r = char2_consistency(
            &parse_sequence(lo)?.signs,
            &parse_sequence(up)?.signs,
            lam,
            12,
        );
        if !r.ok() {
            return ok(false, format!("{lo:?} -> {up:?} at {lam}: {r:?}"));
        }
    }
    ok(true, "xi in three modes, one strand, five adjunction cases")
}

/// Small `(lower, upper, lambda)` cases for the adjunction check.
pub fn adjunction_cases() -> [(&'static str, &'static str, i64); 5] {
    [
        ("+", "+", 1),
        ("+-", "", 2),
        ("-+", "+-", 0),
        ("++", "++", -1),
        ("+-+", "+", 3),
    ]
}

/// Render checks as a text matrix.
pub fn render(checks: &[Check]) -> String {
    let w = checks.iter().map(|c| c.key.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{:<w$}  {}  {:>7} ms  {}  ({})\n",
            c.key,
            if c.passed { "PASS" } else { "FAIL" },
            c.millis,
            c.claim,
            c.detail,
        ));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {} failed", checks.len(), failed));
    out
}

pub fn to_json(checks: &[Check]) -> serde_json::Value {
    serde_json::json!({
        "checks": checks.iter().map(|c| serde_json::json!({
            "key": c.key,
            "claim": c.claim,
            "passed": c.passed,
            "detail": c.detail,
            "millis": c.millis as u64,
        })).collect::<Vec<_>>(),
        "passed": checks.iter().all(|c| c.passed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let only: Vec<String> = [
            "qint",
            "qbinom",
            "idempotent",
            "covering-relation",
            "form",
            "fake-bubbles",
            "hom-dims",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let checks = run(Scale { full: false }, &only);
        assert_eq!(checks.len(), only.len());
        for c in &checks {
            assert!(c.passed, "{}: {}", c.key, c.detail);
        }
    }

    #[test]
    fn relation_instances_cover_all_families() {
        let names: std::collections::BTreeSet<_> =
            onh_relation_instances(4).into_iter().map(|r| r.0).collect();
        assert_eq!(names.len(), 8);
    }
}
