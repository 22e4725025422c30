use std::process::{Command, Output};

use serde_json::Value;

fn permpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permpath"))
        .args(args)
        .env("PERMPATH_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = permpath(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).expect("valid JSON")
}

#[test]
fn map_and_unmap() {
    assert_eq!(stdout(&["map", "2 1"]).trim(), "U D0");
    assert_eq!(stdout(&["unmap", "U D0"]).trim(), "2 1");
    let v = json(&["map", "2 1"]);
    assert_eq!(v["path"], "U D0");
    assert_eq!(v["perm"], serde_json::json!([2, 1]));
}

#[test]
fn bell_triptych() {
    let text = stdout(&["bell", "--perm", "2 6 8 3 9 11 4 5 1 7 10"]);
    assert_eq!(text.lines().last(), Some("{1,9},{2},{3,4,7,8},{5,6},{10}"));
    let v = json(&["bell", "--perm", "2 6 8 3 9 11 4 5 1 7 10"]);
    assert_eq!(v["partition"], "{1,9},{2},{3,4,7,8},{5,6},{10}");
    assert_eq!(v["path"], "U L1 U L1 U L3 L1 D1 D0 L0 D0");
    assert!(text.contains(v["phi"].as_str().unwrap()));
}

#[test]
fn bell_rejects_non_members() {
    let out = permpath(&["bell", "--perm", "1 2 3"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cyclic with increasing excedances"), "{err}");
}

#[test]
fn invert_bell_terms() {
    let text = stdout(&["invert", "--terms", "1,1,2,5,15,52,203"]);
    assert!(text.contains("ell: 1, 2, 3"));
    assert!(text.contains("dee: 1, 2, 3"));
    assert!(text.contains("classification: nonnegative integers"));
    let v = json(&["invert", "--terms", "1,1,2,5,15,52,203"]);
    assert_eq!(v["ell"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(v["status"], "complete");
    assert_eq!(v["classification"], "nonnegative integers");
}

#[test]
fn census_text_json_csv() {
    let args = ["census", "--subset", "Involutions321", "--n-max", "6"];
    let text = stdout(&args);
    assert!(text.trim_end().ends_with("agree"));
    let v = json(&args);
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"][6]["brute_force"], "20");
    let csv = stdout(&["census", "--subset", "Involutions321", "--n-max", "3", "--csv"]);
    assert_eq!(
        csv,
        "n,bf,cf,closed,agree\n0,1,1,1,true\n1,1,1,1,true\n2,2,2,2,true\n3,3,3,3,true\n"
    );
}

#[test]
fn census_with_marks() {
    let v = json(&[
        "census",
        "--subset",
        "All",
        "--n-max",
        "3",
        "--marks",
        "t",
        "--sources",
        "bf,cf",
    ]);
    assert_eq!(v["rows"][3]["continued_fraction"], "t^3 + 3*t^2 + 2*t");
    assert!(v["rows"][3].get("closed_form").is_none());
}

#[test]
fn cf_expansions() {
    let text = stdout(&["cf", "--scheme", "All", "--order", "5"]);
    assert_eq!(text, "0: 1\n1: 1\n2: 2\n3: 6\n4: 24\n5: 120\n");
    let v = json(&["cf", "--scheme", "bell", "--order", "6"]);
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1", "1", "2", "5", "15", "52", "203"])
    );
}

#[test]
fn mobius_values() {
    assert_eq!(
        stdout(&["mobius", "--family", "C(321,2143,3142)", "--n", "2"]).trim(),
        "1"
    );
    let v = json(&["mobius", "--family", "123,2413,3412", "--n", "6", "--brute-force"]);
    assert_eq!(v["count"], "11");
    assert_eq!(v["brute_force"], "11");
    assert!(!permpath(&["mobius", "--family", "C(213,312)", "--n", "1"])
        .status
        .success());
}

#[test]
fn check_is_deterministic() {
    let a = stdout(&["check", "--max-n", "5", "--seed", "11"]);
    let b = stdout(&["check", "--max-n", "5", "--seed", "11"]);
    assert_eq!(a, b);
    assert!(a.trim_end().ends_with("0 failed"));
    let v = json(&["check", "--max-n", "0"]);
    assert!(v.as_array().unwrap().iter().all(|o| o["passed"] == true));
}

#[test]
fn malformed_input_fails() {
    assert!(!permpath(&["map", "1 1"]).status.success());
    assert!(!permpath(&["unmap", "U X D"]).status.success());
    assert!(!permpath(&["census", "--subset", "Nope"]).status.success());
    assert!(!permpath(&["cf", "--scheme", "Noncrossing", "--marks", "q"])
        .status
        .success());
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |w: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_permpath"))
            .args([
                "census",
                "--subset",
                "UnimodalCycles",
                "--n-max",
                "7",
                "--marks",
                "xvwt",
            ])
            .env("PERMPATH_WORKERS", w)
            .output()
            .unwrap();
        out.stdout
    };
    assert_eq!(run("1"), run("5"));
}
