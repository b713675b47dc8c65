use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn k3rm(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_k3rm")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"));
    (out.status.code().expect("exit code"), v)
}

fn all_checks_pass(v: &Value) -> bool {
    v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == json!(true))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_rm_over_sqrt2() {
    let (code, v) = k3rm(&["construct-rm", "--field", "2", "--m", "3", "--a", "1-a;1-a;1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["signature"], json!([4, 2]));
    assert_eq!(v["results"]["embedding_signatures"], json!([[3, 0], [1, 2]]));
    assert_eq!(v["inputs"]["eps"], json!(1));
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    assert!(all_checks_pass(&v));
}

#[test]
fn construct_rm_over_cubic_field() {
    let (code, v) = k3rm(&["construct-rm", "--field", "x^3 - 3x + 1", "--m", "3", "--a", "a;a;1"]);
    // a has a single negative conjugate, so exactly one place is special
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["signature"], json!([7, 2]));
    assert!(all_checks_pass(&v));
}

#[test]
fn rank_two_is_rejected() {
    let (code, v) = k3rm(&["construct-rm", "--field", "2", "--m", "2", "--a", "1-a;1-a"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("m = 2"));
}

#[test]
fn bad_sign_pattern_is_rejected() {
    let (code, v) = k3rm(&["construct-rm", "--field", "2", "--m", "3", "--a", "1;1;1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("sign"));
}

#[test]
fn structure_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    let (code, built) = k3rm(&["construct-rm", "--field", "5", "--m", "4", "--a", "1-a;1-a;1;2", "--out", path_str(&file)]);
    assert_eq!(code, 0);
    let saved: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(saved, built["results"]["structure"]);
    let (code, inv) = k3rm(&["invariants", "--structure", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(inv["inputs"]["structure"], saved);
    for key in ["signature", "det_class", "embedding_signatures", "phi"] {
        assert_eq!(inv["results"][key], built["results"][key], "{key}");
    }
}

#[test]
fn twists_by_one_and_by_a_non_totally_positive_element() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    k3rm(&["construct-rm", "--field", "2", "--m", "3", "--a", "1-a;1-a;1", "--out", path_str(&file)]);
    let (code, v) = k3rm(&["twist", "--structure", path_str(&file), "--a", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["identical"], json!(true));
    assert_eq!(v["results"]["polarization"], json!(true));
    let (code, v) = k3rm(&["twist", "--structure", path_str(&file), "--a", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["polarization"], json!(false));
    assert_eq!(v["results"]["totally_positive"], json!(false));
    let (code, v) = k3rm(&["twist", "--structure", path_str(&file), "--a", "2+a"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["polarization"], json!(true));
    assert!(all_checks_pass(&v));
}

#[test]
fn period_and_simplicity_from_a_structure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    k3rm(&["construct-rm", "--field", "Q", "--m", "3", "--a", "1;-1;-1", "--out", path_str(&file)]);
    let (code, v) = k3rm(&["period", "--structure", path_str(&file)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["simple"], json!(true));
    let (code, v) = k3rm(&["simplicity", "--structure", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["kernel_basis"], json!([]));
}

#[test]
fn reducible_period_has_rational_kernel() {
    let (code, v) = k3rm(&["simplicity", "--psi", "diag(1,-1,-1,1)", "--x", "e2", "--y", "e3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["simple"], json!(false));
    assert_eq!(v["results"]["kernel_basis"].as_array().unwrap().len(), 2);
}

#[test]
fn kuga_satake_on_a_diagonal_form() {
    let (code, v) = k3rm(&["ks", "--psi", "diag(1,1,-1,-1)", "--x", "e3", "--y", "e4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["J"], json!({"12": "1/1"}));
    assert_eq!(v["results"]["J_check"], json!(true));
    assert_eq!(v["results"]["E_valid"], json!(true));
    assert_eq!(v["results"]["signatures"], json!([4, 4]));
}

#[test]
fn invalid_period_is_rejected() {
    let (code, v) = k3rm(&["ks", "--psi", "diag(1,1,-1,-1)", "--x", "e1", "--y", "e2"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("period"));
}

#[test]
fn json_input_with_explicit_override() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("in.json");
    fs::write(&file, r#"{"psi": "diag(1,1,-1,-1)", "x": "e3", "y": [0, 0, 0, 1]}"#).unwrap();
    let (code, v) = k3rm(&["ks", "--json", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["J"], json!({"12": "1/1"}));
    let (code, _) = k3rm(&["ks", "--json", path_str(&file), "--y", "e3"]);
    assert_eq!(code, 2);
}

#[test]
fn spin_branch_identity() {
    let (code, v) = k3rm(&["spin-branch", "--m", "3", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["identity"], json!("S(9) = W², dim 16 = 2·8"));
    let (code, v) = k3rm(&["spin-branch", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let dec = &v["results"]["wedge2_decomposition"];
    assert!(dec.as_array().unwrap().contains(&json!({"highest": [0, 0], "mult": 1})));
}

#[test]
fn cores_embedding_is_verified() {
    let (code, v) = k3rm(&["cores", "--field", "2", "--phi", "1-a;1-a;1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cores_dim"], json!(16));
    assert_eq!(v["results"]["target_dim"], json!(32));
    assert!(all_checks_pass(&v));
}

#[test]
fn lattice_commands() {
    let (code, v) = k3rm(&["lattice", "snf", "--fixture", "U2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["diag"], json!("diag(2,2)"));
    let (code, v) = k3rm(&["lattice", "embed-check", "--ambient", "U", "--target", "U2", "--map", "[[1,0],[0,2]]"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["primitive"], json!(false));
    let (code, _) = k3rm(&["lattice", "embed-check", "--ambient", "U", "--target", "U", "--map", "[[1,0],[0,2]]"]);
    assert_eq!(code, 2);
    let mut h = vec![0; 22];
    h[0] = 1;
    h[1] = 1;
    let sub = serde_json::to_string(&vec![h]).unwrap();
    let (code, v) = k3rm(&["lattice", "complement", "--sub", &sub]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["signature"], json!([2, 19]));
    assert_eq!(v["results"]["discriminant_group"], json!(["2"]));
}

#[test]
fn double_cover_example() {
    let (code, v) = k3rm(&["example-double-cover", "--d", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["cup_signature"], json!([2, 4]));
    assert!(all_checks_pass(&v));
    let (code, _) = k3rm(&["example-double-cover", "--d", "6"]);
    assert_eq!(code, 2);
    let (code, _) = k3rm(&["example-double-cover", "--d", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn pretty_output_is_a_table() {
    let out = Command::new(env!("CARGO_BIN_EXE_k3rm"))
        .args(["--pretty", "lattice", "snf", "--fixture", "U2"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  U·M·V = D"));
}
