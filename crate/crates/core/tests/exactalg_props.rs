use mhiggs_core::exactalg::{
    rat, Family, Point, Poly, RatFunc, Rational, ShiftFrac, ShiftMonomial, ShiftPoly, ShiftSymbol,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn symbol() -> impl Strategy<Value = ShiftSymbol> {
    (
        prop_oneof![Just(Family::Y), Just(Family::P)],
        1u32..4,
        -3i32..3,
    )
        .prop_map(|(f, n, s)| ShiftSymbol::new(f, n, s))
}

fn monomial() -> impl Strategy<Value = ShiftMonomial> {
    prop::collection::vec((symbol(), -2i32..3), 0..4).prop_map(|fs| {
        fs.into_iter().fold(ShiftMonomial::one(), |m, (s, e)| {
            &m * &ShiftMonomial::power(s, e)
        })
    })
}

fn shift_poly() -> impl Strategy<Value = ShiftPoly> {
    prop::collection::vec((monomial(), -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
        ts.into_iter().fold(ShiftPoly::zero(), |acc, (m, n, d)| {
            acc + ShiftPoly::term(m, rat(n, d))
        })
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..5).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn shift_composes(x in shift_poly(), a in -4i32..5, b in -4i32..5) {
        prop_assert_eq!(x.shift(a).shift(b), x.shift(a + b));
    }

    #[test]
    fn text_and_json_round_trip(x in shift_poly()) {
        prop_assert_eq!(x.to_string().parse::<ShiftPoly>().unwrap(), x.clone());
        prop_assert_eq!(ShiftPoly::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn canonical_form_independent_of_association(a in shift_poly(), b in shift_poly(), c in shift_poly()) {
        let left = (a.clone() * b.clone()) * c.clone() + a.clone();
        let right = a.clone() + a.clone() * (b.clone() * c.clone());
        prop_assert_eq!(left.to_string(), right.to_string());
        prop_assert_eq!(left.to_json(), right.to_json());
    }

    #[test]
    fn sum_of_residues_vanishes(
        roots in prop::collection::btree_set(-6i64..7, 1..4),
        num in prop::collection::vec(small_rational(), 0..6),
        mult in prop::collection::vec(1u32..3, 3),
    ) {
        let roots: Vec<Rational> = roots.into_iter().map(|r| rat(r, 1)).collect();
        let den = roots
            .iter()
            .zip(&mult)
            .fold(Poly::one(), |acc, (r, &m)| acc * Poly::linear(r).pow(m));
        let f = RatFunc::new(Poly::new(num), den).unwrap();
        let total = roots
            .iter()
            .map(|r| f.residue_at(&Point::Finite(r.clone())))
            .fold(f.residue_at(&Point::Infinity), |a, b| a + b);
        prop_assert!(total.is_zero());
    }

    #[test]
    fn ratfunc_field_axioms(
        a in prop::collection::vec(small_rational(), 1..4),
        b in prop::collection::vec(small_rational(), 1..4),
        x in small_rational(),
    ) {
        let (p, q) = (Poly::new(a), Poly::new(b));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let f = RatFunc::new(p.clone(), q.clone()).unwrap();
        let g = RatFunc::new(q, p).unwrap();
        prop_assert!((f.clone() * g.clone()).is_one());
        if let (Ok(fx), Ok(gx)) = (f.eval(&x), g.eval(&x)) {
            prop_assert_eq!((f.clone() + g.clone()).eval(&x).unwrap(), fx.clone() + gx.clone());
            prop_assert_eq!((f * g).eval(&x).unwrap(), fx * gx);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shift_is_ring_homomorphism(a in shift_poly(), b in shift_poly(), m in -3i32..4) {
        prop_assert_eq!((a.clone() * b.clone()).shift(m), a.shift(m) * b.shift(m));
        prop_assert_eq!((a.clone() + b.clone()).shift(m), a.shift(m) + b.shift(m));
    }
}

#[test]
fn frac_cross_multiplication_is_an_equivalence() {
    let x = ShiftPoly::y(1, 0);
    let p = ShiftPoly::p(2, -1);
    let one = ShiftPoly::one();
    let base_num = x.clone() + p.clone();
    let base_den = x.clone() - one.clone();
    let k1 = p.clone() + one.clone();
    let k2 = x.clone() * x.clone() + p.clone().scale(&rat(3, 1));
    let f1 = ShiftFrac::new(base_num.clone(), base_den.clone()).unwrap();
    let f2 = ShiftFrac::new(base_num.clone() * k1.clone(), base_den.clone() * k1).unwrap();
    let f3 = ShiftFrac::new(base_num * k2.clone(), base_den * k2).unwrap();
    for (a, b) in [
        (&f1, &f1),
        (&f1, &f2),
        (&f2, &f1),
        (&f2, &f3),
        (&f1, &f3),
        (&f3, &f1),
    ] {
        assert_eq!(a, b);
    }
    assert_ne!(f1, ShiftFrac::from_poly(x));
    assert_ne!(f1.num(), f2.num());
}

#[test]
fn spec_laurent_example() {
    for (z1, z2) in [(rat(1, 1), rat(2, 1)), (rat(-3, 4), rat(5, 7))] {
        let f = RatFunc::new(Poly::linear(&z1), Poly::linear(&z2)).unwrap();
        assert_eq!(
            f.laurent_expand_at_infinity(2).unwrap(),
            vec![Rational::one(), &z2 - &z1, &z2 * (&z2 - &z1)]
        );
    }
}
