use mhiggs_core::exactalg::{int, rat, Matrix, Poly, RatFunc, Rational};
use mhiggs_core::mhiggs::*;
use mhiggs_core::rootdata::{
    base_dimension, moduli_dimension, reduced_dimension, ColoredDivisor, DynkinType,
};
use mhiggs_core::sklyanin::{sklyanin_bracket, torus_independence, EvaluationFunction};
use mhiggs_core::steinberg::random_rational;
use mhiggs_core::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;

fn q() -> impl Strategy<Value = Rational> {
    (-15i64..=15, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    q().prop_filter("nonzero", |x| !x.is_zero())
}

fn lin(c: &Rational) -> Poly {
    Poly::linear(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn darboux_bracket_is_minus_b(m in nonzero(), a in q(), b in nonzero()) {
        prop_assume!(a != m);
        let (u, v) = (rat(31, 2), rat(-41, 3));
        let k = darboux_bracket(&m, &a, &b, &u, &v).unwrap() / &b;
        prop_assert_eq!(k, int(-1));
        // independent of the auxiliary points
        let k2 = darboux_bracket(&m, &a, &b, &int(50), &int(-60)).unwrap() / &b;
        prop_assert_eq!(k2, int(-1));
        prop_assert_eq!(darboux_omega(&m, &a, &b).unwrap() * &b, Rational::one());
    }

    #[test]
    fn chart_lands_on_the_quadric(m in nonzero(), a in q(), b in nonzero()) {
        let space = identity_framed_space(&m).unwrap();
        let p = darboux_chart(&m, &a, &b).unwrap();
        prop_assert!(space.contains(&p));
        prop_assert_eq!(&p[0] * &p[0] + &p[1] * &p[2], &m * &m);
    }

    #[test]
    fn determinant_is_fixed_by_the_divisor(
        z1 in q(), z2 in q(), f in proptest::array::uniform4(q()), a0 in q(), b0 in q(),
    ) {
        prop_assume!(z1 != z2);
        let Ok(space) = gl2_minuscule_space(z1.clone(), z2.clone(), f.clone()) else {
            return Err(TestCaseError::reject("singular framing"));
        };
        // solve the linear relation for the last free coordinate, then the quadric for c0/d0
        let [ai, bi, ci, di] = f.clone();
        prop_assume!(!ai.is_zero());
        // linear: −d_∞a₀ + c_∞b₀ + b_∞c₀ − a_∞d₀ + (z₁+z₂)det = 0  ⇒  d₀ in terms of c₀;
        // quadric: a₀d₀ − b₀c₀ = z₁z₂det ⇒ c₀ (linear once d₀ is substituted)
        let det = &ai * &di - &bi * &ci;
        let k = (-&di * &a0 + &ci * &b0 + (&z1 + &z2) * &det) / &ai; // d₀ = k + (b_∞/a_∞) c₀
        let s = &bi / &ai;
        let denom = &a0 * &s - &b0;
        prop_assume!(!denom.is_zero());
        let c0 = (&z1 * &z2 * &det - &a0 * &k) / denom;
        let d0 = &k + &s * &c0;
        let p = [a0, b0, c0, d0];
        prop_assert!(space.contains(&p));
        let g = space.group_map(&p).unwrap();
        let det_g = hitchin_fibration(&g).pop().unwrap();
        let expected = RatFunc::new(lin(&z1), lin(&z2)).unwrap() * RatFunc::constant(det);
        prop_assert_eq!(det_g, expected);
    }

    #[test]
    fn section_inverts_the_fibration(r1 in q(), r2 in q(), c in q()) {
        prop_assume!(r1 != r2);
        let (p1, p2, qq) = (lin(&r1), lin(&r2), Poly::constant(c.clone()));
        let g = hitchin_section_gl2(&p1, &p2, &qq).unwrap();
        let e = hitchin_fibration(&g);
        prop_assert_eq!(e[0].clone(), RatFunc::new(qq, p2.clone()).unwrap());
        prop_assert_eq!(e[1].clone(), RatFunc::new(p1, p2).unwrap());
    }

    #[test]
    fn steinberg_framed_section_is_on_the_moduli_space(m in nonzero(), c in q()) {
        // p₁ = z + m, p₂ = z − m: zeros at −m and poles at m
        let space = gl2_minuscule_space(-m.clone(), m.clone(), [int(0), int(-1), int(1), int(0)]).unwrap();
        let p = [-c.clone(), m.clone(), m.clone(), int(0)];
        prop_assert!(space.contains(&p));
        let g = hitchin_section_gl2(&lin(&-m.clone()), &lin(&m), &Poly::constant(c)).unwrap();
        prop_assert_eq!(space.group_map(&p).unwrap().matrix, g.matrix);
    }

    #[test]
    fn fibres_are_isotropic(m in nonzero(), a in q(), b in nonzero(), k in 1usize..=2, l in 1usize..=2) {
        let g = identity_framed_space(&m).unwrap().group_map(&darboux_chart(&m, &a, &b).unwrap()).unwrap();
        let (u, v) = (rat(101, 7), rat(-83, 5));
        let br = sklyanin_bracket(&EvaluationFunction::char_coeff(k, u), &EvaluationFunction::char_coeff(l, v), &g);
        prop_assert!(br.unwrap().is_zero());
    }
}

#[test]
fn gl2_dimensions() {
    let gl2 = DynkinType::new(mhiggs_core::rootdata::Series::GL, 2).unwrap();
    let d = ColoredDivisor::new(gl2, vec![(int(-1), vec![1, 0]), (int(1), vec![0, -1])]).unwrap();
    assert_eq!(moduli_dimension(gl2, &d).unwrap(), 2);
    assert_eq!(base_dimension(gl2, &d).unwrap(), 1);
    assert_eq!(reduced_dimension(gl2, &d, 1).unwrap(), 0);
    assert_eq!(
        reduced_dimension(gl2, &d, 2),
        Err(Error::NegativeDimension(-2))
    );
}

#[test]
fn type_a_reduced_dimensions() {
    // n points coloured ω∨₁ and n coloured ω∨_{r−1}, reduced by a rank r−1 torus
    for n in 1..=4usize {
        for r in 2..=5usize {
            let ty = DynkinType::a(r - 1);
            let mut pts = Vec::new();
            for k in 0..2 * n {
                let mut cw = vec![0; r - 1];
                cw[if k < n { 0 } else { r - 2 }] = 1;
                pts.push((int(k as i64), cw));
            }
            let d = ColoredDivisor::new(ty, pts).unwrap();
            assert_eq!(moduli_dimension(ty, &d).unwrap(), 2 * (n * (r - 1)) as i64);
            assert_eq!(
                reduced_dimension(ty, &d, r - 1).unwrap(),
                2 * ((n - 1) * (r - 1)) as i64
            );
        }
    }
}

#[test]
fn fundamental_modules_span_the_torus() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for ty in [
        DynkinType::a(1),
        DynkinType::a(2),
        DynkinType::a(3),
        DynkinType::d(4),
    ] {
        let r = ty.rank;
        let fundamentals: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| (i == j) as i64).collect())
            .collect();
        let mut tried = 0;
        while tried < 5 {
            let qs: Vec<Rational> = (0..r).map(|_| random_rational(&mut rng)).collect();
            match torus_independence(ty, &qs, &fundamentals) {
                Ok(t) => {
                    assert!(t.is_full(), "{ty} at {qs:?}");
                    tried += 1;
                }
                Err(Error::NotRegularSemisimple) | Err(Error::InvalidInput(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        // a single module cannot span a rank ≥ 2 torus
        if r >= 2 {
            let qs: Vec<Rational> = (0..r).map(|k| int(k as i64 + 2)).collect();
            assert_eq!(
                torus_independence(ty, &qs, &fundamentals[..1])
                    .unwrap()
                    .rank,
                1
            );
        }
    }
    assert_eq!(
        torus_independence(DynkinType::a(2), &[int(1), int(1)], &[vec![1, 0]]),
        Err(Error::NotRegularSemisimple)
    );
}

#[test]
fn section_rejects_bad_degrees() {
    let z = Poly::linear(&Rational::zero());
    assert!(matches!(
        hitchin_section_gl2(&z, &(z.clone() * z.clone()), &Poly::zero()),
        Err(Error::DegreeMismatch(_))
    ));
    assert!(matches!(
        hitchin_section_gl2(&z, &z, &z),
        Err(Error::DegreeMismatch(_))
    ));
    assert!(check_framing(&Matrix::from_ints(&[&[0, -1], &[1, 0]])));
    assert!(!check_framing(&Matrix::identity(2)));
}
