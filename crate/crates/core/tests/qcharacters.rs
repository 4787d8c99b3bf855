use mhiggs_core::exactalg::{int, rat, Poly, Rational};
use mhiggs_core::qchar::{
    bethe_residues, classical_limit, iweyl_reflect, qcharacter, qcharacter_with_budget,
};
use mhiggs_core::qtriang::triangularize_symbolic;
use mhiggs_core::rootdata::{DynkinType, QuiverOrientation, RootSystem};
use mhiggs_core::Error;
use proptest::prelude::*;

fn orientation(ty: DynkinType) -> QuiverOrientation {
    QuiverOrientation::default_for(&RootSystem::new(ty).unwrap())
}

#[test]
fn expansion_equals_triangularization() {
    for ty in [DynkinType::a(1), DynkinType::a(2), DynkinType::d(4)] {
        let o = orientation(ty);
        let res = triangularize_symbolic(ty, &o).unwrap();
        for i in 1..=ty.rank {
            assert_eq!(
                qcharacter(ty, &o, i).unwrap().poly,
                res.tprime[i - 1],
                "{ty} node {i}"
            );
        }
    }
}

#[test]
fn classical_limits_shift_by_constants() {
    let cases = [
        (DynkinType::a(1), vec![0]),
        (DynkinType::a(2), vec![0, 0]),
        (DynkinType::d(4), vec![0, 1, 0, 0]),
    ];
    for (ty, expected) in cases {
        let rs = RootSystem::new(ty).unwrap();
        let zero = vec![0i64; ty.rank];
        for i in 1..=ty.rank {
            let diff = classical_limit(&qcharacter(ty, &orientation(ty), i).unwrap())
                .difference(&rs.fundamental_character(i - 1).unwrap());
            assert!(diff.terms.keys().all(|w| *w == zero));
            assert_eq!(diff.multiplicity(&zero), expected[i - 1], "{ty} node {i}");
        }
    }
}

#[test]
fn d4_node2_reflection() {
    let ty = DynkinType::d(4);
    let m =
        mhiggs_core::exactalg::ShiftMonomial::symbol(mhiggs_core::exactalg::ShiftSymbol::y(2, 0));
    let r = iweyl_reflect(&m, 2, 0, &orientation(ty)).unwrap();
    assert_eq!(
        r.to_string(),
        "P(2,-1) * Y(1,0) * Y(2,-1)^-1 * Y(3,-1) * Y(4,-1)"
    );
}

#[test]
fn budget_is_enforced() {
    let ty = DynkinType::d(4);
    assert!(matches!(
        qcharacter_with_budget(ty, &orientation(ty), 2, 10),
        Err(Error::ExpansionBudgetExceeded(_))
    ));
}

fn small_type() -> impl Strategy<Value = DynkinType> {
    prop_oneof![(1usize..=4).prop_map(DynkinType::a), Just(DynkinType::d(4)),]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn count_matches_classical_dimension((ty, i) in small_type().prop_flat_map(|t| (Just(t), 1..=t.rank))) {
        let qc = qcharacter(ty, &orientation(ty), i).unwrap();
        let mult: i64 = qc.poly.terms().map(|(_, c)| c.to_integer().try_into().unwrap_or(0i64)).sum();
        prop_assert_eq!(mult, classical_limit(&qc).dimension());
        prop_assert!(qc.poly.terms().all(|(_, c)| c.is_integer() && *c > num_rational::BigRational::from_integer(0.into())));
        prop_assert!(qc.poly.is_integral());
    }

    #[test]
    fn classical_limit_is_weyl_invariant((ty, i) in small_type().prop_flat_map(|t| (Just(t), 1..=t.rank)), j in 0usize..4) {
        let rs = RootSystem::new(ty).unwrap();
        let j = j % ty.rank;
        let ch = classical_limit(&qcharacter(ty, &orientation(ty), i).unwrap());
        for (w, m) in &ch.terms {
            prop_assert_eq!(ch.multiplicity(&rs.reflect_weight(j, w)), *m);
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn degree_one_bethe_root_is_regular(q in rational(), c in rational(), shift in rational()) {
        // residue at qw is (q − 1)·w·(q − p(w)), so p(w) = q is the Bethe equation
        let w = q.clone() - &c;
        prop_assume!(q != int(0) && q != int(1) && w != int(0));
        let qc = qcharacter(DynkinType::a(1), &orientation(DynkinType::a(1)), 1).unwrap();
        let p = Poly::new(vec![c.clone(), int(1)]);
        let res = bethe_residues(&qc, &Poly::linear(&w), &p, &q).unwrap();
        prop_assert_eq!(res, vec![(q.clone() * &w, int(0))]);
        let other = w + shift;
        prop_assume!(other != int(0));
        let pw = p.eval(&other);
        let res = bethe_residues(&qc, &Poly::linear(&other), &p, &q).unwrap();
        prop_assert_eq!(res[0].1.clone(), (q.clone() - int(1)) * &other * (q - pw));
    }
}

#[test]
fn trivial_twist_has_no_poles() {
    let qc = qcharacter(DynkinType::a(1), &orientation(DynkinType::a(1)), 1).unwrap();
    assert!(bethe_residues(
        &qc,
        &Poly::linear(&int(3)),
        &Poly::constant(int(1)),
        &int(1)
    )
    .unwrap()
    .is_empty());
    let two_roots = Poly::from_roots(&[int(1), int(2)]);
    assert!(matches!(
        bethe_residues(&qc, &two_roots, &Poly::constant(int(1)), &int(2)),
        Err(Error::DegeneratePole(_))
    ));
}
