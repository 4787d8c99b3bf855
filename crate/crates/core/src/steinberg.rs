//! Steinberg cross-section, its `p`-twisted multiplicative version, and the classical
//! Chevalley-map check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chevrep::{exp_nilpotent, ChevalleyRep};
use crate::error::{Error, Result};
use crate::exactalg::{int, rat, rational_str, Matrix, Rational, Ring, ShiftPoly, ShiftSymbol};
use crate::qchar::{classical_limit, qcharacter};
use crate::rootdata::{DynkinType, QuiverOrientation, RootSystem, Series};

/// `σ(t) = ∏_i exp(t_i e_i) σ_i`, ascending node order.
pub fn steinberg_section<R: Ring>(rep: &ChevalleyRep, t: &[R]) -> Result<Matrix<R>> {
    if t.len() != rep.rank() {
        return Err(Error::InvalidInput(format!(
            "expected {} coefficients",
            rep.rank()
        )));
    }
    let mut g = Matrix::identity(rep.dim());
    for (i, ti) in t.iter().enumerate() {
        g = g * exp_nilpotent(ti, &rep.e[i])? * rep.weyl_representative(i).map(R::from_rational);
    }
    Ok(g)
}

/// `∏_i exp(t'_i e_i) σ_i P(i,0)^{−ω∨_i}`, ascending node order. With `twisted = false`
/// the cocharacter factors are dropped and this is the plain Steinberg section.
pub fn p_twisted_section(
    rep: &ChevalleyRep,
    t: &[ShiftPoly],
    twisted: bool,
) -> Result<Matrix<ShiftPoly>> {
    if t.len() != rep.rank() {
        return Err(Error::InvalidInput(format!(
            "expected {} coefficients",
            rep.rank()
        )));
    }
    let r = rep.rank();
    let mut g = Matrix::identity(rep.dim());
    for (i, ti) in t.iter().enumerate() {
        g = g
            * exp_nilpotent(ti, &rep.e[i])?
            * rep.weyl_representative(i).map(ShiftPoly::from_rational);
        if twisted {
            let mut cw = vec![int(0); r];
            cw[i] = int(-1);
            g = g * rep.cocharacter_symbol(&cw, ShiftSymbol::p(i as u32 + 1, 0))?;
        }
    }
    Ok(g)
}

/// Representations and trace recipes realizing every fundamental character of `ty`.
/// Each entry is `(representation, k)`: the character of `ω_i` is the `k`-th elementary
/// symmetric function of the eigenvalues in that representation.
fn fundamental_recipes(ty: DynkinType) -> Result<Vec<(ChevalleyRep, usize)>> {
    match (ty.series, ty.rank) {
        (Series::A, n) => {
            let rep = ChevalleyRep::defining_a(n);
            Ok((1..=n).map(|k| (rep.clone(), k)).collect())
        }
        (Series::D, 4) => {
            let v = ChevalleyRep::vector_d(4);
            // triality relabelings turn the vector representation into the half-spin ones
            let s3 = v.relabeled(&[2, 1, 0, 3])?;
            let s4 = v.relabeled(&[3, 1, 2, 0])?;
            Ok(vec![(v.clone(), 1), (v, 2), (s3, 1), (s4, 1)])
        }
        _ => Err(Error::UnsupportedType(format!(
            "no fundamental-character recipe for {ty}"
        ))),
    }
}

/// `tr_{V(ω_i)} σ(t)` for every node, computed exactly from matrices.
pub fn fundamental_traces(ty: DynkinType, t: &[Rational]) -> Result<Vec<Rational>> {
    let recipes = fundamental_recipes(ty)?;
    recipes
        .iter()
        .map(|(rep, k)| Ok(steinberg_section(rep, t)?.char_coeffs()[*k].clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChevalleyReport {
    pub ty: DynkinType,
    pub trials: usize,
    /// `c_i` with `χ_{q=1}(t'_i)(g) = χ_{ω_i}(g) + c_i` at every sampled section point `g`.
    pub constants: Vec<Rational>,
    /// `χ_{ω_i}(σ(t)) − t_i`; constant, and nonzero only where the representatives'
    /// normalization shifts the adjoint trace (`D4` node 2).
    pub section_offsets: Vec<Rational>,
}

impl ChevalleyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.ty.to_string(),
            "trials": self.trials,
            "constants": self.constants.iter().map(rational_str).collect::<Vec<_>>(),
            "section_offsets": self.section_offsets.iter().map(rational_str).collect::<Vec<_>>(),
        })
    }
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))
}

/// Splits the classical limit of each node's q-character as `χ(ω_i) + m_i·χ(0)`;
/// anything beyond a trivial summand is reported as a non-affine discrepancy.
fn trivial_summands(ty: DynkinType) -> Result<Vec<i64>> {
    let rs = RootSystem::new(ty)?;
    let orientation = QuiverOrientation::default_for(&rs);
    (1..=ty.rank)
        .map(|i| {
            let limit = classical_limit(&qcharacter(ty, &orientation, i)?);
            let diff = limit.difference(&rs.fundamental_character(i - 1)?);
            let zero = vec![0i64; ty.rank];
            if diff.terms.keys().any(|w| *w != zero) {
                return Err(Error::NonAffineDiscrepancy(format!(
                    "classical limit at node {i} differs from χ(ω{i}) by non-constant terms"
                )));
            }
            Ok(diff.multiplicity(&zero))
        })
        .collect()
}

fn ensure_constant(slot: &mut Option<Vec<Rational>>, c: Vec<Rational>, what: &str) -> Result<()> {
    match slot {
        None => *slot = Some(c),
        Some(prev) if *prev != c => {
            return Err(Error::NonAffineDiscrepancy(format!(
                "{what} {:?} vs {:?}",
                prev.iter().map(rational_str).collect::<Vec<_>>(),
                c.iter().map(rational_str).collect::<Vec<_>>()
            )))
        }
        _ => {}
    }
    Ok(())
}

/// Samples `trials` Steinberg-section points `g = σ(t)` at random rational `t`, reads off
/// their Chevalley coordinates `χ_{ω_i}(g)` from exact matrix traces, and evaluates the
/// `q = 1` limits of the q-characters at the same points. Reports the offsets between the
/// two coordinate systems; fails unless they are the same at every point.
pub fn classical_chevalley_check(
    ty: DynkinType,
    trials: usize,
    seed: u64,
) -> Result<ChevalleyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ty.rank;
    let shifts = trivial_summands(ty)?;
    let mut constants = None;
    let mut offsets = None;
    for _ in 0..trials.max(1) {
        let t: Vec<Rational> = (0..r).map(|_| random_rational(&mut rng)).collect();
        let chi = fundamental_traces(ty, &t)?;
        let e_star: Vec<Rational> = chi.iter().zip(&shifts).map(|(x, m)| x + int(*m)).collect();
        ensure_constant(
            &mut constants,
            e_star.iter().zip(&chi).map(|(a, b)| a - b).collect(),
            "offsets",
        )?;
        ensure_constant(
            &mut offsets,
            chi.iter().zip(&t).map(|(a, b)| a - b).collect(),
            "section offsets",
        )?;
    }
    Ok(ChevalleyReport {
        ty,
        trials: trials.max(1),
        constants: constants.expect("at least one trial"),
        section_offsets: offsets.expect("at least one trial"),
    })
}
