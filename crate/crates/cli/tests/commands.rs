use std::process::Command;

fn a4csl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_a4csl"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn dirichlet_formats() {
    let (code, out, _) = a4csl(&["dirichlet", "11"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1, 5, 10, 20, 6, 50, 50, 80, 90, 30, 144\n");

    let (_, csv, _) = a4csl(&["dirichlet", "3", "--output", "csv"]);
    assert_eq!(csv, "n,f\n1,1\n2,5\n3,10\n");

    let (_, json, _) = a4csl(&["dirichlet", "2", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["coefficients"], serde_json::json!([1, 5]));
}

#[test]
fn rot_reports() {
    let (code, out, _) = a4csl(&["rot", "(t,2*t,0,0)", "--output", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sigma"], 5);
    assert_eq!(v["den"], 5);
    assert_eq!(v["alpha"], "-1+t");
    assert_eq!(v["q_alpha"]["quat"], "(1, 2, 0, 0)");

    let (code, out, _) = a4csl(&["rot", "(1,0,0,0)"]);
    assert_eq!(code, 0);
    assert!(out.contains("sigma           1"));
    assert!(out.contains("[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]"));
}

#[test]
fn coordinate_input() {
    let (code, a, _) = a4csl(&["rot", "--coords", "0,0,1,0"]);
    let (_, b, _) = a4csl(&["rot", "(1/2,1/2,1/2,1/2)"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(a4csl(&["rot", "(1/2,0,0,0)"]).0, 2);
    assert_eq!(a4csl(&["rot", "(1,x,0,0)"]).0, 2);
    assert_eq!(a4csl(&["rot", "(1,t,0,0)"]).0, 3);
    assert_eq!(a4csl(&["rot", "(0,0,0,0)"]).0, 3);
    assert_eq!(a4csl(&["census", "3", "--budget", "10"]).0, 4);
    assert_eq!(a4csl(&["census", "5", "--only", "--nmax", "4"]).0, 4);
    assert_eq!(a4csl(&["frobnicate"]).0, 2);
}

#[test]
fn truncated_census_keeps_rows() {
    let (code, out, _) = a4csl(&["census", "6", "--nmax", "4", "--output", "csv"]);
    assert_eq!(code, 4);
    assert!(out.starts_with("n,rotation_classes,csl_count,f_formula,match\n1,1,1,1,true\n"));
    assert!(out.contains("4,20,20,20,true\n# truncated:"));
}

#[test]
fn equal_verdicts() {
    let (_, out, _) = a4csl(&["equal", "(t,2*t,0,0)", "(1+t,t,t,1)", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equal_csl"], true);
    assert_eq!(v["equal_csl_hnf"], true);
    assert_eq!(v["symmetry_related"], false);

    // q and q·½(1,1,1,1)
    let (_, out, _) = a4csl(&["equal", "(1,1,1,0)", "(-1/2,3/2,1/2,1/2)", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["equal_csl"].clone(), v["equal_csl_hnf"].clone(), v["symmetry_related"].clone()),
        (true.into(), true.into(), true.into()));

    let (_, out, _) = a4csl(&["equal", "(1,1,1,0)", "(t,2*t,0,0)"]);
    assert!(out.contains("equal_csl             false"));
    assert!(out.contains("equal_csl_hnf         false"));
    assert!(out.contains("symmetry_related      false"));
}

#[test]
fn census_final_row() {
    let (code, out, _) = a4csl(&["census", "5", "--output", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "5,30,6,6,true");
}

#[test]
fn census_detail_lists_bases() {
    let (_, out, _) = a4csl(&["census", "5", "--only", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["csl_count"], 6);
    assert_eq!(v["csls"].as_array().unwrap().len(), 6);
    assert_eq!(v["csls"][0]["index"], 5);
}

#[test]
fn enumerate_lists_classes() {
    let (code, out, _) = a4csl(&["enumerate", "2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("5 classes\n"));
}

#[test]
fn csl_command() {
    let (code, out, _) = a4csl(&["csl", "(t,2*t,0,0)"]);
    assert_eq!(code, 0);
    assert!(out.contains("hnf      [[1, 0, 0, 4], [0, 1, 0, 2], [0, 0, 1, 2], [0, 0, 0, 5]]"));
}

#[test]
fn repeated_runs_are_identical() {
    let a = a4csl(&["census", "8", "--output", "json", "--threads", "1"]);
    let b = a4csl(&["census", "8", "--output", "json", "--threads", "3"]);
    assert_eq!(a, b);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = a4csl(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}
