//! Reference formulas for `u_α` and `t'_i` in the canonical JSON monomial format.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exactalg::{Family, ShiftMonomial, ShiftPoly};
use crate::qtriang::{reference_u_signs, TriangularizationResult};
use crate::rootdata::DynkinType;

const A1: &str = include_str!("../golden/a1.json");
const A2: &str = include_str!("../golden/a2.json");
const D4: &str = include_str!("../golden/d4.json");

#[derive(Clone, Debug, PartialEq)]
pub struct GoldenData {
    pub ty: DynkinType,
    pub orientation: String,
    /// `false` when the formulas are the `p ≡ 1` specialization.
    pub p_twisted: bool,
    /// Positive roots in simple-root coordinates, in label order.
    pub roots: Vec<Vec<i64>>,
    /// Keyed by 1-based root label.
    pub u: BTreeMap<usize, ShiftPoly>,
    /// Keyed by 1-based node.
    pub tprime: BTreeMap<usize, ShiftPoly>,
}

fn table(v: &serde_json::Value, key: &str) -> Result<BTreeMap<usize, ShiftPoly>> {
    let obj = v
        .get(key)
        .and_then(|x| x.as_object())
        .ok_or_else(|| Error::Parse(format!("golden file lacks {key:?}")))?;
    obj.iter()
        .map(|(k, p)| {
            let idx = k
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad label {k:?}")))?;
            Ok((idx, ShiftPoly::from_json(p)?))
        })
        .collect()
}

impl GoldenData {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let ty: DynkinType = v
            .get("type")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::Parse("golden file lacks \"type\"".into()))?
            .parse()?;
        let roots = serde_json::from_value(v.get("roots").cloned().unwrap_or_default())
            .map_err(|e| Error::Parse(format!("roots: {e}")))?;
        Ok(GoldenData {
            ty,
            orientation: v
                .get("orientation")
                .and_then(|x| x.as_str())
                .unwrap_or("")
                .to_string(),
            p_twisted: v.get("p_twisted").and_then(|x| x.as_bool()).unwrap_or(true),
            roots,
            u: table(v, "u")?,
            tprime: table(v, "tprime")?,
        })
    }

    pub fn from_str(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    /// The embedded data for `A1`, `A2` or `D4`.
    pub fn builtin(ty: DynkinType) -> Result<Self> {
        Self::from_str(builtin_text(ty)?)
    }

    /// Reads `<dir>/<type>.json`, e.g. `d4.json`.
    pub fn load_from_dir(dir: &Path, ty: DynkinType) -> Result<Self> {
        let path = dir.join(format!("{}.json", ty.to_string().to_lowercase()));
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_str(&text)
    }
}

fn builtin_text(ty: DynkinType) -> Result<&'static str> {
    match ty.to_string().as_str() {
        "A1" => Ok(A1),
        "A2" => Ok(A2),
        "D4" => Ok(D4),
        other => Err(Error::UnsupportedType(format!(
            "no reference data for {other}"
        ))),
    }
}

pub fn golden_types() -> Vec<DynkinType> {
    vec![DynkinType::a(1), DynkinType::a(2), DynkinType::d(4)]
}

/// Outcome of comparing one computed formula with its reference.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaCheck {
    /// `u3`, `t'2`, ...
    pub name: String,
    pub terms: usize,
    /// First monomial (in canonical order) whose coefficients differ, if any.
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub monomial: String,
    pub computed: String,
    pub reference: String,
}

impl FormulaCheck {
    pub fn matches(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn first_difference(ours: &ShiftPoly, theirs: &ShiftPoly) -> Option<Mismatch> {
    let mut monos: Vec<&ShiftMonomial> = ours.terms().map(|(m, _)| m).collect();
    monos.extend(theirs.terms().map(|(m, _)| m));
    monos.sort();
    monos.dedup();
    monos.into_iter().find_map(|m| {
        let (a, b) = (ours.coeff(m), theirs.coeff(m));
        (a != b).then(|| Mismatch {
            monomial: m.to_string(),
            computed: crate::exactalg::rational_str(&a),
            reference: crate::exactalg::rational_str(&b),
        })
    })
}

fn drop_p(p: &ShiftPoly) -> ShiftPoly {
    p.map_symbols(|s| (s.family != Family::P).then_some(s))
}

fn check(name: String, ours: &ShiftPoly, theirs: &ShiftPoly, twisted: bool) -> FormulaCheck {
    let ours = if twisted { ours.clone() } else { drop_p(ours) };
    FormulaCheck {
        name,
        terms: theirs.len(),
        mismatch: first_difference(&ours, theirs),
    }
}

/// Compares every `u_α` (after the documented sign normalization) and `t'_i`.
pub fn verify(res: &TriangularizationResult, golden: &GoldenData) -> Result<Vec<FormulaCheck>> {
    if res.ty != golden.ty {
        return Err(Error::InvalidInput(format!(
            "reference data is for {}, not {}",
            golden.ty, res.ty
        )));
    }
    let signs = reference_u_signs(res.ty);
    let mut out = Vec::new();
    for (a, u) in res.u.iter().enumerate() {
        let name = format!("u{}", a + 1);
        let Some(theirs) = golden.u.get(&(a + 1)) else {
            continue;
        };
        let ours = match u.as_poly() {
            Some(p) if signs[a] < 0 => -p.clone(),
            Some(p) => p.clone(),
            None => {
                out.push(FormulaCheck {
                    name,
                    terms: theirs.len(),
                    mismatch: Some(Mismatch {
                        monomial: "(denominator)".into(),
                        computed: u.to_string(),
                        reference: theirs.to_string(),
                    }),
                });
                continue;
            }
        };
        out.push(check(name, &ours, theirs, golden.p_twisted));
    }
    for (i, t) in res.tprime.iter().enumerate() {
        if let Some(theirs) = golden.tprime.get(&(i + 1)) {
            out.push(check(format!("t'{}", i + 1), t, theirs, golden.p_twisted));
        }
    }
    Ok(out)
}
