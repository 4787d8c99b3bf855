//! q-characters by iterated iWeyl reflections, their classical limits, and the A1
//! Bethe-root residue check.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{
    int, Family, Point, Poly, RatFunc, Rational, ShiftMonomial, ShiftPoly, ShiftSymbol,
};
use crate::rootdata::{Character, DynkinType, QuiverOrientation, RootSystem};

pub const EXPANSION_BUDGET: usize = 10_000;

/// One step of the expansion: `monomial` was produced by a reflection at `(node, shift)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogStep {
    pub monomial: ShiftMonomial,
    pub node: usize,
    pub shift: i32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QCharacter {
    pub ty: DynkinType,
    /// 1-based.
    pub node: usize,
    pub poly: ShiftPoly,
    pub generation_log: Vec<LogStep>,
}

/// `A_{i,k}⁻¹ = Y(i,k)⁻¹ Y(i,k−1)⁻¹ ∏_{i→j} Y(j,k) ∏_{j→i} Y(j,k−1) P(i,k−1)`; multiplying by
/// it replaces `Y(i,k)` with its iWeyl image.
pub fn inverse_root_monomial(orientation: &QuiverOrientation, i: usize, k: i32) -> ShiftMonomial {
    let mut m = &ShiftMonomial::power(ShiftSymbol::y(i as u32, k), -1)
        * &ShiftMonomial::power(ShiftSymbol::y(i as u32, k - 1), -1);
    for j in orientation.out_of(i) {
        m = &m * &ShiftMonomial::symbol(ShiftSymbol::y(j as u32, k));
    }
    for j in orientation.into(i) {
        m = &m * &ShiftMonomial::symbol(ShiftSymbol::y(j as u32, k - 1));
    }
    &m * &ShiftMonomial::symbol(ShiftSymbol::p(i as u32, k - 1))
}

/// Reflects the factor `Y(i,k)` of `m`, which must carry a positive exponent.
pub fn iweyl_reflect(
    m: &ShiftMonomial,
    i: usize,
    k: i32,
    orientation: &QuiverOrientation,
) -> Result<ShiftMonomial> {
    if m.exponent2(&ShiftSymbol::y(i as u32, k)) <= 0 {
        return Err(Error::NoReflectableFactor(i));
    }
    Ok(m * &inverse_root_monomial(orientation, i, k))
}

/// Splits a multiset of shifts into strings `{top, top−1, …, top−len+1}` in general
/// position: maximal runs of the distinct values, peeled layer by layer.
fn strings(mut shifts: BTreeMap<i32, i32>) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    while !shifts.is_empty() {
        let keys: Vec<i32> = shifts.keys().copied().collect();
        let mut start = 0;
        for idx in 1..=keys.len() {
            if idx == keys.len() || keys[idx] != keys[idx - 1] + 1 {
                out.push((keys[idx - 1], (idx - start) as i32));
                start = idx;
            }
        }
        for k in keys {
            let e = shifts.get_mut(&k).expect("key present");
            *e -= 1;
            if *e == 0 {
                shifts.remove(&k);
            }
        }
    }
    out
}

/// Monomials of the `sl₂` q-character at node `j` of the `j`-dominant monomial `m`, each
/// with the number of inverse roots applied and the shift of the last one.
fn sl2_expansion(
    m: &ShiftMonomial,
    j: usize,
    orientation: &QuiverOrientation,
) -> Vec<(ShiftMonomial, i64, Option<i32>)> {
    let mut shifts = BTreeMap::new();
    for (s, e2) in m.factors() {
        if s.family == Family::Y && s.node as usize == j {
            shifts.insert(s.shift, e2 / 2);
        }
    }
    let mut terms = vec![(m.clone(), 0i64, None)];
    for (top, len) in strings(shifts) {
        // KR string: apply A⁻¹ at top−len+1, top−len+2, … in turn
        let mut next = Vec::new();
        for (mono, depth, last) in &terms {
            let mut cur = mono.clone();
            next.push((cur.clone(), *depth, *last));
            for step in 0..len {
                let k = top - len + 1 + step;
                cur = &cur * &inverse_root_monomial(orientation, j, k);
                next.push((cur.clone(), depth + step as i64 + 1, Some(k)));
            }
        }
        terms = next;
    }
    terms
}

fn is_dominant_at(m: &ShiftMonomial, j: usize) -> bool {
    m.factors()
        .iter()
        .all(|(s, e2)| !(s.family == Family::Y && s.node as usize == j) || *e2 >= 0)
}

/// Frenkel–Mukhin expansion of the fundamental q-character at `node` (1-based),
/// starting from `Y(node,0)`.
pub fn qcharacter(
    ty: DynkinType,
    orientation: &QuiverOrientation,
    node: usize,
) -> Result<QCharacter> {
    qcharacter_with_budget(ty, orientation, node, EXPANSION_BUDGET)
}

pub fn qcharacter_with_budget(
    ty: DynkinType,
    orientation: &QuiverOrientation,
    node: usize,
    budget: usize,
) -> Result<QCharacter> {
    let rs = RootSystem::new(ty)?;
    let r = rs.rank();
    if node == 0 || node > r {
        return Err(Error::InvalidInput(format!(
            "node {node} out of range for {ty}"
        )));
    }
    let top = ShiftMonomial::symbol(ShiftSymbol::y(node as u32, 0));
    let mut mult: BTreeMap<ShiftMonomial, i64> = BTreeMap::from([(top.clone(), 1)]);
    let mut colored: BTreeMap<(ShiftMonomial, usize), i64> = BTreeMap::new();
    let mut queue: BTreeSet<(i64, ShiftMonomial)> = BTreeSet::from([(0, top)]);
    let mut log = Vec::new();

    while let Some((depth, m)) = queue.pop_first() {
        let mu = mult[&m];
        for j in 1..=r {
            let deficit = mu - colored.get(&(m.clone(), j)).copied().unwrap_or(0);
            if deficit <= 0 {
                continue;
            }
            if !is_dominant_at(&m, j) {
                return Err(Error::InvalidInput(format!(
                    "q-character expansion failed at {m}, node {j}"
                )));
            }
            for (m2, d, last) in sl2_expansion(&m, j, orientation) {
                let c = colored.entry((m2.clone(), j)).or_insert(0);
                *c += deficit;
                let c = *c;
                let entry = mult.entry(m2.clone()).or_insert(0);
                if c > *entry {
                    *entry = c;
                }
                if d > 0 {
                    queue.insert((depth + d, m2.clone()));
                    if let Some(k) = last {
                        log.push(LogStep {
                            monomial: m2,
                            node: j,
                            shift: k,
                        });
                    }
                }
            }
            if mult.len() > budget {
                return Err(Error::ExpansionBudgetExceeded(budget));
            }
        }
    }
    let mut poly = ShiftPoly::zero();
    for (m, c) in mult {
        poly = poly + ShiftPoly::term(m, int(c));
    }
    Ok(QCharacter {
        ty,
        node,
        poly,
        generation_log: log,
    })
}

/// Collapses shifts to 0 and drops every non-`Y` symbol; the result is a weight table
/// in fundamental-weight coordinates.
pub fn collapse_to_character(poly: &ShiftPoly, rank: usize) -> Result<Character> {
    let mut ch = Character::default();
    for (m, c) in poly.terms() {
        let mut w = vec![0i64; rank];
        for (s, e2) in m.factors() {
            if s.family == Family::Y {
                if e2 % 2 != 0 || s.node == 0 || s.node as usize > rank {
                    return Err(Error::NonIntegralExponent(m.to_string()));
                }
                w[s.node as usize - 1] += (*e2 / 2) as i64;
            }
        }
        if !c.is_integer() {
            return Err(Error::InvalidInput(format!(
                "non-integral coefficient on {m}"
            )));
        }
        let c = c
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("coefficient overflow".into()))?;
        *ch.terms.entry(w).or_insert(0) += c;
    }
    ch.terms.retain(|_, c| *c != 0);
    Ok(ch)
}

pub fn classical_limit(qc: &QCharacter) -> Character {
    collapse_to_character(&qc.poly, qc.ty.rank).expect("q-characters have integral data")
}

/// Evaluates an A1-type shift polynomial with `Y(1,k) ↦ y(q^k z)`, `P(1,k) ↦ p(q^k z)`.
pub fn evaluate_a1(poly: &ShiftPoly, y: &RatFunc, p: &RatFunc, q: &Rational) -> Result<RatFunc> {
    let qpow = |k: i32| -> Rational {
        if k >= 0 {
            num_traits::pow(q.clone(), k as usize)
        } else {
            num_traits::pow(q.recip(), (-k) as usize)
        }
    };
    let mut total = RatFunc::zero();
    for (m, c) in poly.terms() {
        let mut term = RatFunc::constant(c.clone());
        for (s, e2) in m.factors() {
            if e2 % 2 != 0 {
                return Err(Error::NonIntegralExponent(m.to_string()));
            }
            let base = match s.family {
                Family::Y => y.scale_arg(&qpow(s.shift))?,
                Family::P => p.scale_arg(&qpow(s.shift))?,
                _ => return Err(Error::InvalidInput(format!("unexpected symbol {s}"))),
            };
            term = term * base.pow(e2 / 2)?;
        }
        total = total + term;
    }
    Ok(total)
}

/// Substitutes `y(z) = Q(z)/Q(q⁻¹z)` into the A1 q-character and returns the residue at
/// every apparent pole `z = q·w`, `w` a root of `Q`.
pub fn bethe_residues(
    qc: &QCharacter,
    qpoly: &Poly,
    p: &Poly,
    q: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    if qc.ty != DynkinType::a(1) {
        return Err(Error::UnsupportedType(format!(
            "Bethe residues need A1, got {}",
            qc.ty
        )));
    }
    if q.is_zero() {
        return Err(Error::InvalidInput("q must be nonzero".into()));
    }
    if qpoly.is_zero() || !qpoly.is_squarefree() {
        return Err(Error::InvalidInput(
            "Q must be a nonzero squarefree polynomial".into(),
        ));
    }
    let roots = qpoly.rational_roots()?;
    if Some(roots.len()) != qpoly.degree() {
        return Err(Error::InvalidInput(
            "Q must split over the rationals".into(),
        ));
    }
    if q.is_one() {
        // y ≡ 1: no apparent poles at all
        return Ok(Vec::new());
    }
    for a in &roots {
        if a.is_zero() || roots.iter().any(|b| a * q == *b) {
            return Err(Error::DegeneratePole(format!(
                "root {a} collides under z ↦ qz"
            )));
        }
    }
    let y = RatFunc::new(qpoly.clone(), qpoly.scale_arg(&q.recip()))?;
    let t = evaluate_a1(&qc.poly, &y, &RatFunc::from_poly(p.clone()), q)?;
    Ok(roots
        .iter()
        .map(|w| {
            let pole = q * w;
            let res = t.residue_at(&Point::Finite(pole.clone()));
            (pole, res)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn orient(ty: DynkinType) -> QuiverOrientation {
        QuiverOrientation::default_for(&RootSystem::new(ty).unwrap())
    }

    #[test]
    fn reflection_examples() {
        let y = |i, k| ShiftMonomial::symbol(ShiftSymbol::y(i, k));
        let a1 = iweyl_reflect(&y(1, 0), 1, 0, &orient(DynkinType::a(1))).unwrap();
        assert_eq!(a1.to_string(), "P(1,-1) * Y(1,-1)^-1");
        let a2 = iweyl_reflect(&y(1, 0), 1, 0, &orient(DynkinType::a(2))).unwrap();
        assert_eq!(a2.to_string(), "P(1,-1) * Y(1,-1)^-1 * Y(2,-1)");
        let d4 = iweyl_reflect(&y(2, 0), 2, 0, &orient(DynkinType::d(4))).unwrap();
        assert_eq!(
            d4.to_string(),
            "P(2,-1) * Y(1,0) * Y(2,-1)^-1 * Y(3,-1) * Y(4,-1)"
        );
        assert!(matches!(
            iweyl_reflect(&y(1, 0), 1, 1, &orient(DynkinType::a(1))),
            Err(Error::NoReflectableFactor(1))
        ));
    }

    #[test]
    fn string_decomposition() {
        assert_eq!(strings(BTreeMap::from([(0, 1), (-1, 1)])), vec![(0, 2)]);
        assert_eq!(
            strings(BTreeMap::from([(0, 2), (-1, 1), (3, 1)])),
            vec![(0, 2), (3, 1), (0, 1)]
        );
    }

    #[test]
    fn a1_and_a2() {
        let qc = qcharacter(DynkinType::a(1), &orient(DynkinType::a(1)), 1).unwrap();
        assert_eq!(qc.poly.to_string(), "Y(1,0) + P(1,-1) * Y(1,-1)^-1");
        let o = orient(DynkinType::a(2));
        let t1 = qcharacter(DynkinType::a(2), &o, 1).unwrap().poly;
        let expect: ShiftPoly =
            "Y(1,0) + P(1,-1) * Y(2,-1) * Y(1,-1)^-1 + P(1,-1) * P(2,-2) * Y(2,-2)^-1"
                .parse()
                .unwrap();
        assert_eq!(t1, expect);
        assert_eq!(qcharacter(DynkinType::a(2), &o, 2).unwrap().poly.len(), 3);
    }

    #[test]
    fn d4_sizes() {
        let o = orient(DynkinType::d(4));
        let sizes: Vec<(usize, i64)> = (1..=4)
            .map(|i| {
                let qc = qcharacter(DynkinType::d(4), &o, i).unwrap();
                (qc.poly.len(), classical_limit(&qc).dimension())
            })
            .collect();
        assert_eq!(sizes, vec![(8, 8), (28, 29), (8, 8), (8, 8)]);
    }

    #[test]
    fn budget_is_enforced() {
        let o = orient(DynkinType::d(4));
        assert!(matches!(
            qcharacter_with_budget(DynkinType::d(4), &o, 2, 5),
            Err(Error::ExpansionBudgetExceeded(5))
        ));
    }

    #[test]
    fn bethe_generic_and_trivial() {
        let qc = qcharacter(DynkinType::a(1), &orient(DynkinType::a(1)), 1).unwrap();
        let (w, q) = (rat(3, 1), rat(2, 1));
        // residue at qw is (q−1)·w·(q − p(w))
        let p = Poly::from_ints(&[1, 1]);
        let res = bethe_residues(&qc, &Poly::linear(&w), &p, &q).unwrap();
        assert_eq!(
            res,
            vec![(rat(6, 1), rat(1, 1) * rat(3, 1) * (rat(2, 1) - rat(4, 1)))]
        );
        assert!(
            bethe_residues(&qc, &Poly::linear(&w), &Poly::one(), &rat(1, 1))
                .unwrap()
                .is_empty()
        );
    }
}
