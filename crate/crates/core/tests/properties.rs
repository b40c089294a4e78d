use oddsl2::bubbles::{FakeBubbleExpr, SuperMonomial};
use oddsl2::onh::{normal_form, Letter, OnhWord};
use oddsl2::skewpoly::SkewPoly;
use oddsl2::udot::{multiply, CanonicalElement, CanonicalSymbol, Kind};
use oddsl2::CoveringScalar;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = CoveringScalar> {
    prop::collection::vec((-3i64..=3, -4i64..=4, 0i64..=1), 0..5).prop_map(|ts| {
        ts.into_iter()
            .fold(CoveringScalar::zero(), |acc, (c, e, p)| {
                acc + CoveringScalar::monomial(c, e, p)
            })
    })
}

fn skew(n: usize) -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), -2i64..=2), 0..4).prop_map(
        move |ts| {
            let mut f = SkewPoly::zero(n);
            for (e, c) in ts {
                f.add_term(e, c);
            }
            f
        },
    )
}

fn word(n: usize) -> impl Strategy<Value = OnhWord> {
    let letter = (any::<bool>(), 1..=n).prop_map(move |(is_x, i)| {
        if is_x || i == n {
            Letter::X(i)
        } else {
            Letter::D(i)
        }
    });
    prop::collection::vec(letter, 0..6).prop_map(move |ls| OnhWord::new(n, ls).unwrap())
}

fn fake() -> impl Strategy<Value = FakeBubbleExpr> {
    prop::collection::vec((prop::collection::vec(1u32..=3, 0..3), -2i64..=2), 0..3).prop_map(|ts| {
        ts.into_iter().fold(FakeBubbleExpr::zero(), |acc, (w, c)| {
            let (sign, m) = SuperMonomial::from_word(&w);
            acc.add(&FakeBubbleExpr::monomial(m, sign * c))
        })
    })
}

proptest! {
    #[test]
    fn bar_is_an_involutive_ring_map(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.tau_twist().tau_twist(), a.clone());
        prop_assert_eq!(a.rho_twist().rho_twist(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in scalar(), b in scalar(), p in 0i64..=1) {
        let b = b + CoveringScalar::monomial(1, 5, p);
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn skew_product_is_associative(f in skew(3), g in skew(3), h in skew(3)) {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn divided_difference_formulas_agree(f in skew(3), i in 1usize..3) {
        prop_assert_eq!(f.oddpartial(i).unwrap(), f.oddpartial_closed(i).unwrap());
        prop_assert!(f.oddpartial(i).unwrap().oddpartial(i).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_multiplicative(u in word(3), v in word(3)) {
        let mut uv = u.letters.clone();
        uv.extend_from_slice(&v.letters);
        let joined = normal_form(&OnhWord::new(3, uv).unwrap());
        prop_assert_eq!(normal_form(&u).mul(&normal_form(&v)).unwrap(), joined);
    }

    #[test]
    fn normal_form_acts_like_the_word(w in word(3), f in skew(3)) {
        prop_assert_eq!(normal_form(&w).act(&f).unwrap(), w.act(&f).unwrap());
    }

    #[test]
    fn udot_product_is_associative_and_bar_compatible(
        lam in -4i64..=4,
        shape in prop::collection::vec((any::<bool>(), 0u32..=2, 0u32..=2), 3),
    ) {
        let mut elems = Vec::new();
        let mut weight = lam;
        for &(ef, a, b) in &shape {
            let kind = if ef { Kind::EF } else { Kind::FE };
            let s = CanonicalSymbol::new(kind, a, b, weight);
            prop_assume!(s.is_some());
            let e = CanonicalElement::from_symbol(s.unwrap());
            weight = e.target();
            elems.push(e);
        }
        let (z, y, x) = (&elems[0], &elems[1], &elems[2]);
        let xy = multiply(x, y).unwrap();
        let yz = multiply(y, z).unwrap();
        prop_assert_eq!(multiply(&xy, z).unwrap(), multiply(x, &yz).unwrap());
        prop_assert_eq!(xy.bar(), multiply(&x.bar(), &y.bar()).unwrap());
    }

    #[test]
    fn fake_bubble_algebra_is_associative(a in fake(), b in fake(), c in fake()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}
