use std::process::{Command, Output};

use serde_json::Value;

fn opgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opgs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&opgs(&all))).unwrap()
}

#[test]
fn normalize_phi_word() {
    let o = opgs(&[
        "normalize",
        "--system",
        "averaging",
        "--mode",
        "order",
        "[x1] [x2]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[[x1] x2]");
}

#[test]
fn scheme_closure_reports_cycle() {
    let v = json(&[
        "closure",
        "--system",
        "averaging",
        "--mode",
        "scheme",
        "[[[1]]]",
    ]);
    assert_eq!(v["has_cycle"], true);
}

#[test]
fn nonunitary_scheme_confluence() {
    let o = opgs(&[
        "confluence",
        "--system",
        "averaging",
        "--variant",
        "nonunitary",
        "--mode",
        "scheme",
        "--max-degree",
        "6",
        "--generators",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("locally confluent: true"));
}

#[test]
fn missing_varphi_is_not_confluent() {
    let o = opgs(&[
        "confluence",
        "--system",
        "averaging-novarphi",
        "--variant",
        "nonunitary",
        "--mode",
        "scheme",
        "--max-degree",
        "5",
    ]);
    let out = stdout(&o);
    assert!(out.starts_with("locally confluent: false"), "{out}");
    assert!(out.contains("[[x1] [x2]]"));
}

#[test]
fn exit_codes() {
    assert_eq!(opgs(&["normalize", "[x1"]).status.code(), Some(1));
    assert_eq!(opgs(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(opgs(&["gs", "--mode", "scheme"]).status.code(), Some(1));
    assert_eq!(
        opgs(&["normalize", "--mode", "scheme", "[[[1]]]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        opgs(&[
            "normalize",
            "--mode",
            "scheme",
            "--budget",
            "1",
            "[[x1] [x2]]"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(opgs(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_errors_are_structured() {
    let v = json(&["normalize", "--mode", "scheme", "[[[1]]]"]);
    assert_eq!(v["error"]["kind"], "cycle");
}

#[test]
fn trace_lists_every_step() {
    let v = json(&["normalize", "--trace", "--mode", "order", "[[x1] [x2]]"]);
    assert_eq!(v["normal_form"], "[1] [[x1] x2]");
    assert_eq!(
        v["trace"].as_array().unwrap().len(),
        v["steps"].as_u64().unwrap() as usize
    );
}

#[test]
fn gs_and_membership() {
    let o = opgs(&["gs", "--max-degree", "4", "--generators", "1"]);
    assert!(stdout(&o).starts_with("GS basis up to degree 4: true"));
    let v = json(&["member", "[x1] [x2] - [[x1] x2]"]);
    assert_eq!(v["member"], true);
    let v = json(&["member", "[x1] x2"]);
    assert_eq!(v["member"], false);
}

#[test]
fn basis_counts_and_audit() {
    let v = json(&["basis", "--count", "--max-degree", "2", "--generators", "1"]);
    let irr: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["irreducible"].as_u64().unwrap())
        .collect();
    assert_eq!(irr, [1, 2, 5]);
    let o = opgs(&[
        "basis",
        "--audit",
        "--mode",
        "scheme",
        "--max-degree",
        "3",
        "--generators",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mismatches: 0"));
}

#[test]
fn orientation_of_zero_argument_phi() {
    let v = json(&["orient", "phi", "1", "1"]);
    assert_eq!(v["pattern_lhs"], "[1] [1]");
    assert_eq!(v["order_lhs"], "[[1]]");
    assert_eq!(v["agrees"], false);
}

#[test]
fn placements_and_relations() {
    let v = json(&["placements", "[x1] [x1] x1", "[x1]"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = opgs(&["relation", "[x1] x2 [x1]", ":0:1", ":2:1"]);
    assert_eq!(stdout(&o), "separated\nskeleton: _1 x2 _2\n");
    let o = opgs(&["relation", "[[x1]]", ":0:1", "0:0:1"]);
    assert_eq!(stdout(&o).trim(), "nested");
}

#[test]
fn eval_check_passes() {
    let o = opgs(&[
        "eval-check",
        "--mode",
        "scheme",
        "--max-degree",
        "3",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("failures: 0"));
}

#[test]
fn custom_opi_file() {
    let path = std::env::temp_dir().join(format!("opgs-opi-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"name":"phi","arity":2,"body":"[x1] [x2] - [[x1] x2]"}"#,
    )
    .unwrap();
    let o = opgs(&["normalize", "--system", path.to_str().unwrap(), "[x1] [x2]"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout(&o).trim(), "[[x1] x2]");
}
