use mhiggs_wasm::{darboux_json, qcharacter_json, verify_reference_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn qcharacter_of_d4_adjoint_node() {
    let v = parse(qcharacter_json("D4", 2).unwrap());
    assert_eq!(v["terms"], 28);
    assert_eq!(v["dimension"], 29);
    assert!(qcharacter_json("A2", 5).is_err());
    assert!(qcharacter_json("Q7", 1).is_err());
}

#[test]
fn reference_check_matches() {
    let v = parse(verify_reference_json("A2").unwrap());
    assert_eq!(v["matching"], 5);
    assert_eq!(v["formulas"][1]["text"], "-1 * P(2,0) * Y(2,0)^-1");
    assert!(verify_reference_json("A3").is_err());
}

#[test]
fn darboux_values() {
    let v = parse(darboux_json("2", "1", "3").unwrap());
    assert_eq!(v["point"], serde_json::json!(["1", "3", "1", "-1"]));
    assert_eq!(v["bracket"], "-3");
    assert_eq!(v["omega"], "1/3");
    assert!(darboux_json("2", "1", "0").is_err());
}
