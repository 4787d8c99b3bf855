//! Three operations for the static page in `www/`: a fundamental q-character, the reference
//! formula check, and the GL2 Darboux chart. Each has a plain Rust version returning
//! `Result<String, String>` and a thin `wasm_bindgen` export.

use serde_json::json;
use wasm_bindgen::prelude::*;

use mhiggs_core::exactalg::{int, parse_rational, rational_str};
use mhiggs_core::golden::{verify, GoldenData};
use mhiggs_core::mhiggs::{darboux_bracket, darboux_chart, darboux_omega};
use mhiggs_core::qchar::{classical_limit, qcharacter};
use mhiggs_core::qtriang::triangularize_symbolic;
use mhiggs_core::rootdata::{DynkinType, QuiverOrientation, RootSystem};

fn default_orientation(ty: DynkinType) -> Result<QuiverOrientation, String> {
    Ok(QuiverOrientation::default_for(
        &RootSystem::new(ty).map_err(|e| e.to_string())?,
    ))
}

/// JSON `{text, terms, dimension}` for the q-character of `node` (1-based).
pub fn qcharacter_json(ty: &str, node: usize) -> Result<String, String> {
    let ty: DynkinType = ty.parse().map_err(|e: mhiggs_core::Error| e.to_string())?;
    let qc = qcharacter(ty, &default_orientation(ty)?, node).map_err(|e| e.to_string())?;
    Ok(json!({
        "text": qc.poly.to_string(),
        "terms": qc.poly.len(),
        "dimension": classical_limit(&qc).dimension(),
    })
    .to_string())
}

/// JSON `{matching, formulas: [{name, terms, ok, text}]}` for `A1`, `A2` or `D4`.
pub fn verify_reference_json(ty: &str) -> Result<String, String> {
    let ty: DynkinType = ty.parse().map_err(|e: mhiggs_core::Error| e.to_string())?;
    let golden = GoldenData::builtin(ty).map_err(|e| e.to_string())?;
    let res = triangularize_symbolic(ty, &default_orientation(ty)?).map_err(|e| e.to_string())?;
    let checks = verify(&res, &golden).map_err(|e| e.to_string())?;
    let text = |name: &str| -> String {
        let (kind, idx) = if let Some(i) = name.strip_prefix("t'") {
            ("t", i)
        } else {
            ("u", &name[1..])
        };
        let i: usize = idx.parse().unwrap_or(1);
        if kind == "t" {
            res.tprime[i - 1].to_string()
        } else {
            res.u[i - 1].to_string()
        }
    };
    let formulas: Vec<_> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "terms": c.terms, "ok": c.matches(), "text": text(&c.name) }))
        .collect();
    Ok(json!({
        "type": ty.to_string(),
        "matching": checks.iter().filter(|c| c.matches()).count(),
        "formulas": formulas,
    })
    .to_string())
}

/// JSON `{point, bracket, omega}` at Darboux coordinates `(a, b)` on the quadric
/// `a₀² + b₀c₀ = m²`.
pub fn darboux_json(m: &str, a: &str, b: &str) -> Result<String, String> {
    let parse = |s: &str| parse_rational(s.trim()).map_err(|e| e.to_string());
    let (m, a, b) = (parse(m)?, parse(a)?, parse(b)?);
    let point = darboux_chart(&m, &a, &b).map_err(|e| e.to_string())?;
    let mut aux = [int(1009), int(-1013), int(1019)]
        .into_iter()
        .filter(|p| *p != m && *p != -m.clone());
    let (u, v) = (
        aux.next().expect("three candidates"),
        aux.next().expect("three candidates"),
    );
    let bracket = darboux_bracket(&m, &a, &b, &u, &v).map_err(|e| e.to_string())?;
    let omega = darboux_omega(&m, &a, &b).map_err(|e| e.to_string())?;
    Ok(json!({
        "point": point.iter().map(rational_str).collect::<Vec<_>>(),
        "bracket": rational_str(&bracket),
        "omega": rational_str(&omega),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn qcharacter_report(ty: &str, node: usize) -> Result<String, JsValue> {
    qcharacter_json(ty, node).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify_reference(ty: &str) -> Result<String, JsValue> {
    verify_reference_json(ty).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn darboux_report(m: &str, a: &str, b: &str) -> Result<String, JsValue> {
    darboux_json(m, a, b).map_err(|e| JsValue::from_str(&e))
}
