use mhiggs_core::exactalg::{Family, ShiftPoly};
use mhiggs_core::golden::{golden_types, verify, GoldenData};
use mhiggs_core::qtriang::triangularize_symbolic;
use mhiggs_core::rootdata::{DynkinType, QuiverOrientation, RootSystem};

fn solve(ty: DynkinType) -> mhiggs_core::qtriang::TriangularizationResult {
    let o = QuiverOrientation::default_for(&RootSystem::new(ty).unwrap());
    triangularize_symbolic(ty, &o).unwrap()
}

fn text(p: &ShiftPoly) -> String {
    p.to_string()
}

#[test]
fn every_reference_formula_matches() {
    for ty in golden_types() {
        let res = solve(ty);
        assert!(res.residual_checked);
        let checks = verify(&res, &GoldenData::builtin(ty).unwrap()).unwrap();
        assert_eq!(checks.len(), res.u.len() + ty.rank);
        for c in checks {
            assert!(c.matches(), "{ty} {}: {:?}", c.name, c.mismatch);
        }
    }
}

#[test]
fn a1_formulas() {
    let res = solve(DynkinType::a(1));
    assert_eq!(text(&res.tprime[0]), "Y(1,0) + P(1,-1) * Y(1,-1)^-1");
    assert_eq!(res.u[0].to_string(), "-1 * P(1,0) * Y(1,0)^-1");
    let untwisted = res.u[0]
        .as_poly()
        .unwrap()
        .map_symbols(|s| (s.family != Family::P).then_some(s));
    assert_eq!(untwisted.to_string(), "-1 * Y(1,0)^-1");
}

#[test]
fn a2_formulas() {
    let res = solve(DynkinType::a(2));
    assert_eq!(
        text(&res.tprime[0]),
        "Y(1,0) + P(1,-1) * Y(1,-1)^-1 * Y(2,-1) + P(1,-1) * P(2,-2) * Y(2,-2)^-1"
    );
    let counts: Vec<usize> = res.tprime.iter().map(ShiftPoly::len).collect();
    assert_eq!(counts, vec![3, 3]);
    assert_eq!(res.u[1].to_string(), "-1 * P(2,0) * Y(2,0)^-1");
    assert_eq!(res.u[2].to_string(), "-1 * P(1,0) * P(2,0) * Y(1,0)^-1");
}

#[test]
fn d4_counts_and_exponents() {
    let t0 = std::time::Instant::now();
    let res = solve(DynkinType::d(4));
    assert!(t0.elapsed().as_secs() < 60);
    let distinct: Vec<usize> = res.tprime.iter().map(ShiftPoly::len).collect();
    let with_mult: Vec<i64> = res
        .tprime
        .iter()
        .map(|p| {
            p.terms()
                .map(|(_, c)| c.to_integer().try_into().unwrap_or(0i64))
                .sum()
        })
        .collect();
    assert_eq!(distinct, vec![8, 28, 8, 8]);
    assert_eq!(with_mult, vec![8, 29, 8, 8]);
    assert!(res.tprime.iter().all(ShiftPoly::is_integral));
    assert!(res.u.iter().all(|u| u.is_integral()));
}

#[test]
fn tampered_reference_is_reported() {
    let ty = DynkinType::a(2);
    let mut g = GoldenData::builtin(ty).unwrap();
    let t = g.tprime.get_mut(&2).unwrap();
    *t = t.clone() + ShiftPoly::y(1, 5);
    let checks = verify(&solve(ty), &g).unwrap();
    let bad: Vec<_> = checks.iter().filter(|c| !c.matches()).collect();
    assert_eq!(bad.len(), 1);
    let m = bad[0].mismatch.as_ref().unwrap();
    assert_eq!(
        (
            bad[0].name.as_str(),
            m.monomial.as_str(),
            m.reference.as_str()
        ),
        ("t'2", "Y(1,5)", "1")
    );
}
