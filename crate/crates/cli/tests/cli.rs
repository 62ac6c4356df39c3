use std::process::{Command, Output};

fn heisp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisp")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn gen_q3_json() {
    let out = heisp(&["gen", "--q", "3", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["values"].as_array().unwrap().len(), 24);
    assert!(v["values"].as_array().unwrap().iter().all(|row| row.as_array().unwrap().len() == 24));
    assert_eq!(v["approx"].as_array().unwrap().len(), 24);
    assert_eq!(v["meta"]["nu"], serde_json::json!([2]));
}

#[test]
fn output_is_byte_identical() {
    for format in ["json", "csv", "latex", "text"] {
        let a = heisp(&["gen", "--q", "5", "--format", format]);
        let b = heisp(&["gen", "--q", "5", "--format", format, "--threads", "1"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn even_q_is_a_usage_error() {
    let out = heisp(&["gen", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
    assert_eq!(heisp(&["gen", "--q", "15"]).status.code(), Some(2));
    assert_eq!(heisp(&["gen", "--q", "1"]).status.code(), Some(2));
    assert_eq!(heisp(&["gen", "--q", "3", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(heisp(&["gen"]).status.code(), Some(2));
}

#[test]
fn explicit_field() {
    let out = heisp(&["gen", "--p", "3", "--f", "2", "--modulus", "2,2,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["meta"]["q"], 9);
    assert_eq!(v["meta"]["modulus"], serde_json::json!([2, 2, 1]));
    // x^2 + 1 splits over GF(5): a domain error, exit 1
    let bad = heisp(&["gen", "--p", "5", "--f", "2", "--modulus", "1,0,1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn verify_orthogonality_q5() {
    let out = heisp(&["verify", "--q", "5", "--suite", "orthogonality"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
    let out = heisp(&["verify", "--q", "3", "--suite", "kappa,gauss", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v.get("elapsed").is_none());
}

#[test]
fn enumeration_cap_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_heisp"))
        .args(["verify", "--q", "3", "--suite", "classes"])
        .env("HEISP_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn classes_and_sums() {
    let out = heisp(&["classes", "--q", "5", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["classes"].as_array().unwrap().len(), 50);
    let out = heisp(&["sums", "--q", "7", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["gauss"].as_array().unwrap().len(), 6);
    assert!(v["gauss"].as_array().unwrap().iter().all(|g| g["norm"] == "7"));
}

#[test]
fn oracle_bounds() {
    let out = heisp(&["oracle", "--q", "3"]);
    assert!(out.status.success());
    assert_eq!(heisp(&["oracle", "--q", "5"]).status.code(), Some(2));
    assert_eq!(heisp(&["oracle", "--q", "7", "--long"]).status.code(), Some(2));
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("heisp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let out = heisp(&["gen", "--q", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 25);
    std::fs::remove_dir_all(&dir).unwrap();
}
