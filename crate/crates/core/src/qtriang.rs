//! q-triangularization of the `p`-twisted section: symbolic elimination over shift
//! polynomials, and truncated series q-eigenvalues for concrete inputs.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::chevrep::{exp_nilpotent, ChevalleyRep};
use crate::error::{Error, Result};
use crate::exactalg::{
    int, Family, Matrix, RatFunc, Rational, Ring, ShiftFrac, ShiftPoly, ShiftSymbol,
};
use crate::rootdata::{DynkinType, QuiverOrientation, RootSystem};

#[derive(Clone, Debug, PartialEq)]
pub struct TriangularizationResult {
    pub ty: DynkinType,
    /// `u_α`, aligned with `RootSystem::positive_roots`.
    pub u: Vec<ShiftFrac>,
    pub tprime: Vec<ShiftPoly>,
    pub residual_checked: bool,
}

fn unknown(family: Family, idx: usize, shift: i32) -> ShiftSymbol {
    ShiftSymbol::new(family, idx as u32, shift)
}

fn is_unknown(s: &ShiftSymbol) -> bool {
    matches!(s.family, Family::U | Family::T)
}

/// Order in which nodes enter the section and the `B₋` target: a topological order of
/// the quiver with sources of arrows placed after their targets.
fn node_order(rs: &RootSystem, orientation: &QuiverOrientation) -> Result<Vec<usize>> {
    let r = rs.rank();
    let mut order = Vec::with_capacity(r);
    let mut placed = vec![false; r + 1];
    while order.len() < r {
        let next = (1..=r).find(|&i| !placed[i] && orientation.out_of(i).all(|j| placed[j]));
        match next {
            Some(i) => {
                placed[i] = true;
                order.push(i);
            }
            None => return Err(Error::InvalidInput("orientation has a cycle".into())),
        }
    }
    Ok(order)
}

/// Positive roots in the convex order of the `c`-sorting word of `w₀`, where `c` is the
/// Coxeter word `order`: sweep `c` cyclically, keeping `s_i` whenever `w(α_i) > 0`, and
/// record `β = w(α_i)`.
pub fn convex_root_order(rs: &RootSystem, order: &[usize]) -> Vec<usize> {
    let r = rs.rank();
    let total = rs.positive_roots.len();
    let mut word: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(total);
    'sweep: for &i in order.iter().cycle() {
        // w(α_i) for w = s_{word[0]} ⋯ s_{word[last]}
        let mut beta = vec![0i64; r];
        beta[i - 1] = 1;
        for &j in word.iter().rev() {
            let p = rs.coroot_pairing(j - 1, &beta);
            beta[j - 1] -= p;
        }
        if beta.iter().all(|&x| x >= 0) {
            let idx = rs
                .positive_roots
                .iter()
                .position(|b| *b == beta)
                .expect("positive root");
            out.push(idx);
            word.push(i);
            if out.len() == total {
                break 'sweep;
            }
        }
    }
    out
}

/// `u = ∏ exp(u_β e_β)` over the convex order of `w₀`, reversed.
fn gauge(rep: &ChevalleyRep, order: &[usize], shift: i32) -> Result<Matrix<ShiftPoly>> {
    let mut u = Matrix::identity(rep.dim());
    for a in convex_root_order(&rep.root_system, order).into_iter().rev() {
        let c = ShiftPoly::symbol(unknown(Family::U, a + 1, shift));
        u = u * exp_nilpotent(&c, &rep.root_vectors[a])?;
    }
    Ok(u)
}

/// `g^y = ∏_i exp(f_i Y(i,0)⁻¹) Y(i,0)^{α∨_i} P(i,0)^{−ω∨_i}` over `order`.
fn target(rep: &ChevalleyRep, order: &[usize]) -> Result<Matrix<ShiftPoly>> {
    let r = rep.rank();
    let mut g = Matrix::identity(rep.dim());
    for &i in order {
        let yinv = ShiftPoly::monomial(crate::exactalg::ShiftMonomial::power(
            ShiftSymbol::y(i as u32, 0),
            -1,
        ));
        g = g * exp_nilpotent(&yinv, &rep.f[i - 1])?;
        let coroot: Vec<Rational> = rep.root_system.cartan[i - 1]
            .iter()
            .map(|&c| int(c))
            .collect();
        g = g * rep.cocharacter_symbol(&coroot, ShiftSymbol::y(i as u32, 0))?;
        let mut cw = vec![int(0); r];
        cw[i - 1] = int(-1);
        g = g * rep.cocharacter_symbol_lifted(&cw, ShiftSymbol::p(i as u32, 0))?;
    }
    Ok(g)
}

fn section(rep: &ChevalleyRep, order: &[usize]) -> Result<Matrix<ShiftPoly>> {
    let r = rep.rank();
    let mut g = Matrix::identity(rep.dim());
    for &i in order {
        let t = ShiftPoly::symbol(unknown(Family::T, i, 0));
        g = g
            * exp_nilpotent(&t, &rep.e[i - 1])?
            * rep.weyl_representative(i - 1).map(ShiftPoly::from_rational);
        let mut cw = vec![int(0); r];
        cw[i - 1] = int(-1);
        g = g * rep.cocharacter_symbol_lifted(&cw, ShiftSymbol::p(i as u32, 0))?;
    }
    Ok(g)
}

type Key = (Family, u32);

fn key(s: &ShiftSymbol) -> Key {
    (s.family, s.node)
}

/// Applies the elimination rules `key ↦ value at shift 0` until no eliminated unknown is
/// left; the rules are acyclic by construction.
fn resolve(p: &ShiftPoly, solved: &BTreeMap<Key, ShiftPoly>) -> Result<ShiftPoly> {
    let mut p = p.clone();
    while p
        .symbols()
        .iter()
        .any(|s| is_unknown(s) && solved.contains_key(&key(s)))
    {
        p = p.substitute(&|s: &ShiftSymbol| {
            if is_unknown(s) {
                solved.get(&key(s)).map(|v| v.shift(s.shift))
            } else {
                None
            }
        })?;
    }
    Ok(p)
}

/// Pivots of `p = 0`: unknowns `x` whose function occurs at a single shift, linearly,
/// with a monomial coefficient free of unknowns. Returns `(x, value of x)`.
fn pivots(p: &ShiftPoly) -> Vec<(ShiftSymbol, ShiftPoly)> {
    let unknowns: Vec<ShiftSymbol> = p.symbols().into_iter().filter(is_unknown).collect();
    let mut out = Vec::new();
    for x in &unknowns {
        if unknowns.iter().any(|y| y != x && key(y) == key(x)) {
            continue;
        }
        let parts = p.collect_in(x);
        if parts.keys().any(|&e| e != 0 && e != 2) {
            continue;
        }
        let Some(c) = parts.get(&2) else { continue };
        if c.symbols().iter().any(is_unknown) {
            continue;
        }
        let Some(cinv) = c.inverse_term() else {
            continue;
        };
        let d = parts.get(&0).cloned().unwrap_or_else(ShiftPoly::zero);
        out.push((*x, -(d * cinv)));
    }
    out
}

fn distinct_unknowns(p: &ShiftPoly) -> usize {
    p.symbols()
        .iter()
        .filter(|s| is_unknown(s))
        .map(key)
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn triangularize_symbolic(
    ty: DynkinType,
    orientation: &QuiverOrientation,
) -> Result<TriangularizationResult> {
    let rep = ChevalleyRep::standard(ty)?;
    let rs = rep.root_system.clone();
    let order = node_order(&rs, orientation)?;
    let lhs = gauge(&rep, &order, -1)? * section(&rep, &order)?;
    let rhs = target(&rep, &order)? * gauge(&rep, &order, 0)?;
    let residual = lhs - rhs;

    // entries ordered by the height of their weight difference
    let n = rep.dim();
    let mut cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let level = |a: usize| -> Rational {
        let w: Vec<Rational> = rep.weights[a].iter().map(|&x| int(x)).collect();
        let rho: Vec<Rational> = vec![int(1); rs.rank()];
        rs.pair(&rho, &w)
    };
    cells.sort_by_key(|&(a, b)| (level(a) - level(b), a, b));

    let total = rs.positive_roots.len() + rs.rank();
    let mut eqs: Vec<ShiftPoly> = cells
        .iter()
        .map(|&(a, b)| residual[(a, b)].clone())
        .collect();
    let mut solved: BTreeMap<Key, ShiftPoly> = BTreeMap::new();
    while solved.len() < total {
        for e in eqs.iter_mut() {
            *e = resolve(e, &solved)?;
        }
        // fewest unknown functions first, then weight height
        let best = eqs
            .iter()
            .filter(|e| distinct_unknowns(e) > 0)
            .filter_map(|e| {
                pivots(e)
                    .into_iter()
                    .next()
                    .map(|pv| (distinct_unknowns(e), pv))
            })
            .min_by_key(|(k, _)| *k);
        match best {
            Some((_, (x, v))) => {
                solved.insert(key(&x), v.shift(-x.shift));
            }
            None => {
                let missing: Vec<String> = (1..=rs.positive_roots.len())
                    .map(|a| (Family::U, a as u32))
                    .chain((1..=rs.rank()).map(|i| (Family::T, i as u32)))
                    .filter(|k| !solved.contains_key(k))
                    .map(|(f, i)| format!("{f:?}{i}"))
                    .collect();
                return Err(Error::EliminationStalled(missing.join(", ")));
            }
        }
    }

    let value = |k: Key| resolve(&solved[&k], &solved);
    for e in &eqs {
        if !resolve(e, &solved)?.is_zero() {
            return Err(Error::EliminationStalled("residual does not vanish".into()));
        }
    }
    let u = (1..=rs.positive_roots.len())
        .map(|a| value((Family::U, a as u32)))
        .collect::<Result<Vec<_>>>()?;
    let tprime = (1..=rs.rank())
        .map(|i| value((Family::T, i as u32)))
        .collect::<Result<Vec<_>>>()?;
    for p in u.iter().chain(&tprime) {
        if !p.is_integral() {
            return Err(Error::NonIntegralExponent(p.to_string()));
        }
    }
    Ok(TriangularizationResult {
        ty,
        u: u.into_iter().map(ShiftFrac::from_poly).collect(),
        tprime,
        residual_checked: true,
    })
}

/// Sign of each `u_α` relative to the reference tables. The tables normalize the root
/// vectors of `α₁₀, α₁₁, α₁₂` of `D₄` with the opposite sign to `e_α = [e_β, e_i]`.
pub fn reference_u_signs(ty: DynkinType) -> Vec<i32> {
    let n = RootSystem::new(ty)
        .map(|rs| rs.positive_roots.len())
        .unwrap_or(0);
    let mut s = vec![1; n];
    if ty == DynkinType::d(4) {
        for a in [9, 10, 11] {
            s[a] = -1;
        }
    }
    s
}

/// Truncated `z⁻¹`-expansions of the diagonal of `u(q⁻¹z) g(z) u(z)⁻¹` for a `2×2` `g`,
/// with `u = [[1, a(z)], [0, 1]]` chosen so the result is lower triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEigenvalues {
    pub q: Rational,
    pub order: usize,
    /// `y[j][k]` is the `z^{−k}` coefficient of the `j`-th diagonal entry, `k = 0..=order`.
    pub y: Vec<Vec<Rational>>,
    /// Coefficients of the gauge parameter `a(z)`.
    pub gauge: Vec<Rational>,
}

fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|k| {
            (0..=k).fold(Rational::zero(), |acc, j| {
                acc + a.get(j).cloned().unwrap_or_default()
                    * b.get(k - j).cloned().unwrap_or_default()
            })
        })
        .collect()
}

/// `a(q⁻¹z)` in terms of the `z⁻¹` coefficients of `a(z)`.
fn series_qshift(a: &[Rational], q: &Rational) -> Vec<Rational> {
    let mut pw = Rational::one();
    a.iter()
        .map(|c| {
            let v = c * &pw;
            pw *= q;
            v
        })
        .collect()
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    (0..a.len().max(b.len()))
        .map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default())
        .collect()
}

fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|c| -c.clone()).collect()
}

struct Entries([Vec<Rational>; 4]);

impl Entries {
    fn new(g: &Matrix<RatFunc>, n: usize) -> Result<Self> {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::UnsupportedType(
                "series q-eigenvalues are implemented for 2×2 maps".into(),
            ));
        }
        let e = |i, j| -> Result<Vec<Rational>> {
            let f: &RatFunc = &g[(i, j)];
            f.laurent_expand_at_infinity(n)
        };
        Ok(Entries([e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?]))
    }

    /// `g₁₂ + a_s g₂₂ − a g₁₁ − a a_s g₂₁`, the upper-right entry of `u(q⁻¹z) g u(z)⁻¹`.
    fn upper(&self, a: &[Rational], q: &Rational, n: usize) -> Vec<Rational> {
        let [g11, g12, g21, g22] = &self.0;
        let s = series_qshift(a, q);
        let t1 = series_mul(&s, g22, n);
        let t2 = series_mul(a, g11, n);
        let t3 = series_mul(&series_mul(a, &s, n), g21, n);
        add(&add(&g12[..], &t1), &neg(&add(&t2, &t3)))
    }
}

/// Solves for `a(z)` coefficient by coefficient. `framing = (y₁(∞), y₂(∞))` picks the
/// eigenvalue order at infinity; the two must be distinct when `q = 1`.
pub fn series_q_eigenvalues(
    g: &Matrix<RatFunc>,
    q: &Rational,
    framing: &[Rational],
    n: usize,
) -> Result<SeriesEigenvalues> {
    let ent = Entries::new(g, n)?;
    if framing.len() != 2 {
        return Err(Error::NonRegularFraming("expected two eigenvalues".into()));
    }
    let (y1, y2) = (&framing[0], &framing[1]);
    let [g11, g12, g21, g22] = &ent.0;
    let (a11, a12, a21, a22) = (&g11[0], &g12[0], &g21[0], &g22[0]);
    let (tr, det) = (a11 + a22, a11 * a22 - a12 * a21);
    if y1 + y2 != tr || y1 * y2 != det {
        return Err(Error::NonRegularFraming(format!(
            "({}, {}) are not the eigenvalues of g(∞)",
            crate::exactalg::rational_str(y1),
            crate::exactalg::rational_str(y2)
        )));
    }
    // a repeated eigenvalue is harmless for q ≠ 1: the order-k pivot is (q^k − 1)·y
    if y1 == y2 && q.is_one() {
        return Err(Error::NonRegularFraming(format!(
            "g(∞) has the repeated eigenvalue {} and q = 1",
            crate::exactalg::rational_str(y1)
        )));
    }
    if q.is_zero() {
        return Err(Error::InvalidInput("q must be nonzero".into()));
    }
    // order 0: y₁(∞) = g₁₁ + a₀ g₂₁, and the upper entry vanishes
    let a0 = if !a21.is_zero() {
        (y1 - a11) / a21
    } else if y1 == a11 {
        a12 / (a11 - a22)
    } else {
        // lower-left vanishes and y₁ = g₂₂: no unipotent upper gauge reaches this order
        return Err(Error::RecursionSingular(0));
    };
    let mut a = vec![a0];
    for k in 1..=n {
        // the coefficient of a_k in the order-k equation is q^k y₂ − y₁
        let d = num_traits::pow(q.clone(), k) * y2 - y1;
        if d.is_zero() {
            return Err(Error::RecursionSingular(k));
        }
        a.push(Rational::zero());
        let rest = ent.upper(&a, q, k)[k].clone();
        a[k] = -rest / d;
    }
    let s = series_qshift(&a, q);
    let first = add(g11, &series_mul(&s, g21, n));
    let second = add(g22, &neg(&series_mul(&a, g21, n)));
    Ok(SeriesEigenvalues {
        q: q.clone(),
        order: n,
        y: vec![first, second],
        gauge: a,
    })
}

impl SeriesEigenvalues {
    /// Upper-right entry of `u(q⁻¹z) g(z) u(z)⁻¹` through order `N`; zero for a solution.
    pub fn residual(&self, g: &Matrix<RatFunc>) -> Result<Vec<Rational>> {
        let ent = Entries::new(g, self.order)?;
        Ok(ent.upper(&self.gauge, &self.q, self.order))
    }
}
