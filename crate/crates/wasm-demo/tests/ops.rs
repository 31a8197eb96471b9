use ltdkit_wasm_demo::{generate_text, solve_json, verify_json};
use serde_json::Value;

#[test]
fn generate_then_verify() {
    let c6 = generate_text("cycle:6").unwrap();
    let v: Value = serde_json::from_str(&verify_json(&c6, "0, 1 2,3").unwrap()).unwrap();
    assert_eq!(v["ltd"], true);
    let star = generate_text("star:3").unwrap();
    let v: Value = serde_json::from_str(&verify_json(&star, "0 1").unwrap()).unwrap();
    assert_eq!(v["td"], true);
    assert_eq!(v["ltd"], false);
    assert!(verify_json(&c6, "6").is_err());
    assert!(verify_json(&c6, "a").is_err());
}

#[test]
fn solve_modes() {
    let g = generate_text("two-corona:complete:6").unwrap();
    let r: Value = serde_json::from_str(&solve_json(&g, "construct").unwrap()).unwrap();
    assert_eq!(r["certificate_size"], 12);
    assert_eq!(r["verified"], true);
    assert!(!r["trace"].as_array().unwrap().is_empty());
    let r: Value = serde_json::from_str(&solve_json(&generate_text("cycle:6").unwrap(), "auto").unwrap()).unwrap();
    assert_eq!(r["gamma_tl"], 4);
    assert!(solve_json(&g, "fastest").is_err());
    assert!(solve_json("3 1\n0 1\n", "exact").unwrap_err().contains("isolated"));
}

#[test]
fn bad_specs() {
    assert!(generate_text("cycle").is_err());
    assert!(generate_text("split-tight:1").is_err());
}
