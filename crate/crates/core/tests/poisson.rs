use mhiggs_core::exactalg::{int, rat, Matrix, Point, RatFunc, Rational};
use mhiggs_core::mhiggs::{darboux_chart, identity_framed_space};
use mhiggs_core::sklyanin::*;
use num_traits::Zero;
use proptest::prelude::*;

fn q() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(q(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

/// Evaluation points, kept off the poles of [`group_map`].
fn point() -> impl Strategy<Value = Rational> {
    q().prop_filter("at a pole", |p| *p != int(7) && *p != int(-9))
}

/// `g_∞ + A/(z − z₁) + B/(z − z₂)` with poles at 7 and −9.
fn group_map() -> impl Strategy<Value = GroupRatMap> {
    (2usize..=3)
        .prop_flat_map(|n| (matrix(n), matrix(n), matrix(n)))
        .prop_filter_map("singular framing", |(gi, a, b)| {
            GroupRatMap::from_residues(gi, &[(int(7), a), (int(-9), b)]).ok()
        })
}

fn function(n: usize, point: Rational) -> impl Strategy<Value = EvaluationFunction> {
    prop_oneof![
        (1..=n, 1..=n).prop_map(move |(a, b)| (a, b)).prop_map({
            let p = point.clone();
            move |(a, b)| EvaluationFunction::entry(a, b, p.clone())
        }),
        (1..=n).prop_map(move |k| EvaluationFunction::char_coeff(k, point.clone())),
    ]
}

fn with_functions(k: usize) -> impl Strategy<Value = (GroupRatMap, Vec<EvaluationFunction>)> {
    group_map().prop_flat_map(move |g| {
        let n = g.size();
        let fs: Vec<_> = (0..k).map(|i| function(n, int(i as i64 * 3 - 4))).collect();
        (Just(g), fs)
    })
}

fn quadric_point() -> impl Strategy<Value = (Rational, GroupRatMap)> {
    (
        q().prop_filter("m ≠ 0", |m| !m.is_zero()),
        q(),
        q().prop_filter("b ≠ 0", |b| !b.is_zero()),
    )
        .prop_map(|(m, a, b)| {
            let g = identity_framed_space(&m)
                .unwrap()
                .group_map(&darboux_chart(&m, &a, &b).unwrap())
                .unwrap();
            (m, g)
        })
}

fn off_quadric_points(m: &Rational) -> (Rational, Rational) {
    let mut pts = [int(13), rat(-17, 2)]
        .into_iter()
        .filter(|p| p != m && *p != -m.clone());
    (pts.next().unwrap(), pts.next().unwrap_or(rat(29, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_is_antisymmetric((g, f) in with_functions(2)) {
        let ab = sklyanin_bracket(&f[0], &f[1], &g).unwrap();
        prop_assert_eq!(ab, -sklyanin_bracket(&f[1], &f[0], &g).unwrap());
    }

    #[test]
    fn invariant_functions_commute(g in group_map(), k in 1usize..=3, l in 1usize..=3, u in point(), v in point()) {
        prop_assume!(u != v);
        let n = g.size();
        let (phi, psi) = (EvaluationFunction::char_coeff(k.min(n), u), EvaluationFunction::char_coeff(l.min(n), v));
        prop_assert!(sklyanin_bracket(&phi, &psi, &g).unwrap().is_zero());
        let (gl, gr) = gradients(&phi, &g).unwrap();
        prop_assert_eq!(gl, gr);
    }

    #[test]
    fn jacobi_identity((g, f) in with_functions(3)) {
        prop_assert!(jacobi_cyclic_sum([&f[0], &f[1], &f[2]], &g).unwrap().is_zero());
    }

    #[test]
    fn r_matrix_tail((g, f) in with_functions(2), n in 0usize..6) {
        let (phi, psi) = (&f[0], &f[1]);
        let closed = sklyanin_bracket(phi, psi, &g).unwrap();
        let k = r_matrix_numerator(phi, psi, &g).unwrap();
        // K is symmetric; the antisymmetry of the bracket sits in 1/(u − v)
        prop_assert_eq!(k.clone(), r_matrix_numerator(psi, phi, &g).unwrap());
        let (u, v) = (&phi.point, &psi.point);
        let tail = k * num_traits::pow(v / u, n + 1) / (u - v);
        prop_assert_eq!(closed - bracket_r_matrix_oracle(phi, psi, &g, n).unwrap(), tail);
    }

    #[test]
    fn flow_changes_functions_by_the_bracket((g, f) in with_functions(2)) {
        let (phi, psi) = (&f[0], &f[1]);
        let x = hamiltonian_field(phi, &g).unwrap();
        prop_assert!(x.vanishes_at_infinity());
        let dg = x.variation(&g).try_map(|h| h.eval(&psi.point)).unwrap();
        let (l, _) = gradients(psi, &g).unwrap();
        // dψ(δg) = κ(∇_L ψ, δg·g⁻¹)
        let gv = g.at(&psi.point).unwrap();
        let pairing = (l * dg * gv.inverse().unwrap()).trace();
        prop_assert_eq!(pairing, sklyanin_bracket(psi, phi, &g).unwrap());
    }

    #[test]
    fn omega_matches_bracket((m, g) in quadric_point(), i in 1usize..=2, j in 1usize..=2, k in 1usize..=2, l in 1usize..=2) {
        let (u, v) = off_quadric_points(&m);
        let phi = EvaluationFunction::entry(i, j, u);
        let psi = EvaluationFunction::entry(k, l, v);
        let (xp, xq) = (hamiltonian_field(&phi, &g).unwrap(), hamiltonian_field(&psi, &g).unwrap());
        let om = omega_form(&xp, &xq, &g).unwrap();
        prop_assert_eq!(om.clone(), -omega_form(&xq, &xp, &g).unwrap());
        prop_assert_eq!(om, -int(OMEGA_BRACKET_CONSTANT) * sklyanin_bracket(&phi, &psi, &g).unwrap());
        for p in [m.clone(), -m.clone()] {
            prop_assert_eq!(local_frames(&xp, &g, &p).unwrap(), xp.clone());
        }
    }

    #[test]
    fn omega_is_frame_independent((m, g) in quadric_point(), y in matrix(2), y2 in matrix(2), pole in q()) {
        let (u, v) = off_quadric_points(&m);
        let xp = hamiltonian_field(&EvaluationFunction::entry(1, 2, u), &g).unwrap();
        let xq = hamiltonian_field(&EvaluationFunction::trace(v), &g).unwrap();
        let base = omega_form(&xp, &xq, &g).unwrap();
        // a global change of representative, vanishing at ∞, with poles anywhere
        let s = RatFunc::from_poly(mhiggs_core::exactalg::Poly::linear(&pole)).inv().unwrap();
        let lift = |a: &Matrix<Rational>, f: &RatFunc| a.map(|c| f.clone() * RatFunc::constant(c.clone()));
        let shift = lift(&y, &s) + lift(&y2, &(s.clone() * s));
        let xp2 = xp.regauge(&shift, &g).unwrap();
        prop_assert_eq!(xp2.variation(&g), xp.variation(&g));
        prop_assert_eq!(omega_form(&xp2, &xq, &g).unwrap(), base.clone());
        prop_assert_eq!(omega_form(&xq, &xp2, &g).unwrap(), -base);
    }

    #[test]
    fn moment_field_commutes_with_framing((m, g) in quadric_point(), k in 1usize..=2) {
        let (value, field) = moment_residue(k, &g).unwrap();
        prop_assert!(field.commutator(&g.framing).is_zero());
        if k == 1 {
            // tr g(z) = 2 + 2m/(z − m)
            prop_assert_eq!(value, int(2) * m);
        }
    }
}

#[test]
fn regular_pairs_need_no_frame_change() {
    let g = GroupRatMap::from_residues(
        Matrix::identity(2),
        &[(int(1), Matrix::from_ints(&[&[0, 1], &[1, 0]]))],
    )
    .unwrap();
    let x = TangentPair {
        xl: Matrix::zeros(2, 2),
        xr: Matrix::zeros(2, 2),
    };
    assert!(frame_change(&x, &g, &int(1)).unwrap().is_zero());
    assert_eq!(omega_form(&x, &x, &g).unwrap(), Rational::zero());
}

#[test]
fn non_tangent_pair_is_rejected() {
    // δg with a double pole at the simple pole of g cannot come from the leaf
    let m = int(2);
    let g = identity_framed_space(&m)
        .unwrap()
        .group_map(&darboux_chart(&m, &int(1), &int(3)).unwrap())
        .unwrap();
    let s = RatFunc::from_poly(mhiggs_core::exactalg::Poly::linear(&m))
        .pow(-3)
        .unwrap();
    let x = TangentPair {
        xl: Matrix::from_fn(
            2,
            2,
            |i, j| if i == j { s.clone() } else { RatFunc::zero() },
        ),
        xr: Matrix::zeros(2, 2),
    };
    assert!(matches!(
        frame_change(&x, &g, &m),
        Err(mhiggs_core::Error::NotTangent(_))
    ));
    let _ = Point::Infinity;
}
