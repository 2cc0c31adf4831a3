use knotskein::poly::{LaurentPoly, Var};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    let term = (-50i64..=50, prop::array::uniform5(-3i32..=3));
    prop::collection::vec(term, 0..6).prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(c, e)| (e, c))))
}

fn arb_monomial() -> impl Strategy<Value = LaurentPoly> {
    (prop_oneof![Just(1i64), Just(-1i64)], prop::array::uniform5(-2i32..=2)).prop_map(|(c, e)| LaurentPoly::monomial(c, e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &LaurentPoly::zero(), p.clone());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn render_parse_round_trip(p in arb_poly()) {
        let text = p.render();
        let back = LaurentPoly::parse(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in arb_poly(), q in arb_poly(), ma in arb_monomial(), mz in arb_monomial()) {
        let bind = [(Var::A, ma), (Var::Z, mz)];
        let s = |x: &LaurentPoly| x.substitute(&bind).unwrap();
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&LaurentPoly::one()), LaurentPoly::one());
    }

    #[test]
    fn json_terms_round_trip(p in arb_poly()) {
        prop_assert_eq!(LaurentPoly::from_json_terms(&p.to_json_terms()).unwrap(), p);
    }
}
