use mhiggs_core::exactalg::{int, Rational};
use mhiggs_core::rootdata::{
    moduli_dimension, reduced_dimension, ColoredDivisor, DynkinType, RootSystem, Series,
};
use proptest::prelude::*;

fn all_types() -> Vec<DynkinType> {
    let mut v: Vec<DynkinType> = (1..=8).map(DynkinType::a).collect();
    v.extend((4..=8).map(DynkinType::d));
    v.extend((6..=8).map(|n| DynkinType::new(Series::E, n).unwrap()));
    v
}

#[test]
fn rho_pairs_to_one_with_simple_coroots() {
    for ty in all_types() {
        let rs = RootSystem::new(ty).unwrap();
        for i in 0..rs.rank() {
            // α∨_i in fundamental coweights is row i of the Cartan matrix
            let coroot: Vec<Rational> = rs.cartan[i].iter().map(|&c| int(c)).collect();
            assert_eq!(rs.rho_pairing(&coroot), int(1), "{ty} node {}", i + 1);
            for j in 0..rs.rank() {
                let mut e = vec![0; rs.rank()];
                e[j] = 1;
                assert_eq!(rs.coroot_pairing(i, &e), rs.cartan[i][j]);
            }
        }
    }
}

#[test]
fn positive_root_count_matches_adjoint_dimension() {
    for ty in all_types() {
        let rs = RootSystem::new(ty).unwrap();
        let theta = rs.root_as_weight(&rs.highest_root());
        let adj = rs.classical_character(&theta).unwrap();
        let r = rs.rank() as i64;
        assert_eq!(
            rs.positive_roots.len() as i64,
            (adj.dimension() - r) / 2,
            "{ty}"
        );
    }
}

#[test]
fn characters_are_weyl_invariant() {
    let cases: Vec<(DynkinType, Vec<i64>)> = vec![
        (DynkinType::a(2), vec![2, 1]),
        (DynkinType::a(3), vec![0, 1, 0]),
        (DynkinType::d(4), vec![0, 1, 0, 0]),
        (DynkinType::d(4), vec![0, 0, 1, 0]),
        (DynkinType::d(5), vec![1, 0, 0, 0, 1]),
    ];
    for (ty, lambda) in cases {
        let rs = RootSystem::new(ty).unwrap();
        let ch = rs.classical_character(&lambda).unwrap();
        for i in 0..rs.rank() {
            for (w, m) in &ch.terms {
                assert_eq!(
                    ch.multiplicity(&rs.reflect_weight(i, w)),
                    *m,
                    "{ty} {lambda:?}"
                );
            }
        }
    }
}

#[test]
fn quiver_example_reduced_dimension() {
    for (n, r) in [(2usize, 2usize), (3, 4), (4, 3)] {
        let ty = DynkinType::a(r - 1);
        let mut first = vec![0; r - 1];
        first[0] = 1;
        let mut last = vec![0; r - 1];
        last[r - 2] += 1;
        let pts = (0..2 * n)
            .map(|k| {
                (
                    int(k as i64),
                    if k < n { first.clone() } else { last.clone() },
                )
            })
            .collect();
        let d = ColoredDivisor::new(ty, pts).unwrap();
        assert_eq!(
            reduced_dimension(ty, &d, r - 1).unwrap(),
            2 * (n as i64 - 1) * (r as i64 - 1)
        );
    }
}

proptest! {
    #[test]
    fn moduli_dimension_is_additive(
        a in prop::collection::vec(prop::collection::vec(0i64..3, 3), 0..4),
        b in prop::collection::vec(prop::collection::vec(0i64..3, 3), 0..4),
    ) {
        let ty = DynkinType::a(3);
        let mk = |cws: &[Vec<i64>], off: i64| {
            ColoredDivisor::new(
                ty,
                cws.iter().enumerate().map(|(k, c)| (int(off + k as i64), c.clone())).collect(),
            )
            .unwrap()
        };
        let (da, db) = (mk(&a, 0), mk(&b, 100));
        let sum = |d: &ColoredDivisor| mhiggs_core::rootdata::rho_sum(ty, d).unwrap();
        prop_assert_eq!(sum(&da.union(&db)), sum(&da) + sum(&db));
        if let (Ok(x), Ok(y)) = (moduli_dimension(ty, &da), moduli_dimension(ty, &db)) {
            prop_assert_eq!(moduli_dimension(ty, &da.union(&db)).unwrap(), x + y);
        }
    }
}
