//! End-to-end tests of the command-line surface through the real binary:
//! schemas, exit codes, chain round trips, and byte-identical reruns.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cremona")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cremona-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

const POINTS: &str = r#"{
  "ambient_dim": 2,
  "from": [["1","0","0"], ["0","1","0"], ["1","1","1"]],
  "to":   [["1","2","1"], ["2","1","3"], ["1","1","5"]]
}"#;

const CUBIC: &str = r#"{
  "ambient_dim": 3,
  "components": [
    {"arity": 2, "forms": [
      {"nvars": 2, "degree": 3, "terms": [{"exps": [3,0], "coeff": "1"}]},
      {"nvars": 2, "degree": 3, "terms": [{"exps": [2,1], "coeff": "1"}]},
      {"nvars": 2, "degree": 3, "terms": [{"exps": [1,2], "coeff": "1"}]},
      {"nvars": 2, "degree": 3, "terms": [{"exps": [0,3], "coeff": "1"}]}
    ]}
  ]
}"#;

#[test]
fn points_equiv_then_verify_round_trip() {
    let dir = tmp_dir("points");
    let input = dir.join("pts.json");
    std::fs::write(&input, POINTS).unwrap();
    let chain = dir.join("chain.json");

    let out = run(&[
        "points-equiv",
        "--in",
        input.to_str().unwrap(),
        "--seed",
        "7",
        "--out",
        chain.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["verify", "--chain", chain.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("OK"));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = tmp_dir("determinism");
    let input = dir.join("pts.json");
    std::fs::write(&input, POINTS).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "points-equiv",
            "--in",
            input.to_str().unwrap(),
            "--seed",
            "99",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn monoid_dim_prints_dimension() {
    let dir = tmp_dir("monoid-dim");
    let scheme = dir.join("cubic.json");
    std::fs::write(&scheme, CUBIC).unwrap();
    let out = run(&[
        "monoid-dim",
        "--scheme",
        scheme.to_str().unwrap(),
        "--vertex",
        r#"["0","1","0","0"]"#,
        "--d",
        "4",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "11");
}

#[test]
fn monoid_find_outputs_reproducible_member() {
    let dir = tmp_dir("monoid-find");
    let scheme = dir.join("cubic.json");
    std::fs::write(&scheme, CUBIC).unwrap();
    let run_once = |path: &std::path::Path| {
        let out = run(&[
            "monoid-find",
            "--scheme",
            scheme.to_str().unwrap(),
            "--vertex",
            r#"["0","1","0","0"]"#,
            "--d",
            "3",
            "--seed",
            "17",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    };
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    run_once(&a);
    run_once(&b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(parsed["dimension"], 5);
    assert!(parsed["system"]["basis"].as_array().unwrap().len() == 6);
    assert_eq!(parsed["equation"]["degree"], 3);
}

#[test]
fn parse_errors_exit_with_code_two() {
    let dir = tmp_dir("parse");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&[
        "points-equiv",
        "--in",
        bad.to_str().unwrap(),
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tampered_chain_fails_verification_with_code_four() {
    let dir = tmp_dir("tamper");
    let input = dir.join("pts.json");
    std::fs::write(&input, POINTS).unwrap();
    let chain = dir.join("chain.json");
    let out = run(&[
        "points-equiv",
        "--in",
        input.to_str().unwrap(),
        "--seed",
        "7",
        "--out",
        chain.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // corrupt one claimed target coordinate
    let text = std::fs::read_to_string(&chain).unwrap();
    let needle = r#""to": [
            "1","#;
    let tampered = if text.contains(needle) {
        text.replacen(needle, "\"to\": [\n            \"2\",", 1)
    } else {
        text.replacen("\"1\"", "\"1000000007\"", 1)
    };
    std::fs::write(&chain, tampered).unwrap();
    let out = run(&["verify", "--chain", chain.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn stereographic_and_double_projection_commands() {
    let dir = tmp_dir("monoids");
    // x0 x1 - x2^2 with vertex [1,0,0]
    let m = dir.join("monoid.json");
    std::fs::write(
        &m,
        r#"{
  "equation": {"nvars": 3, "degree": 2, "terms": [
    {"exps": [1,1,0], "coeff": "1"},
    {"exps": [0,0,2], "coeff": "-1"}
  ]},
  "vertex": ["1","0","0"]
}"#,
    )
    .unwrap();
    let out = run(&["stereographic", "--in", m.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stereographic output is json");
    assert!(parsed.get("proj").is_some() && parsed.get("inv").is_some());

    // x0 x1 + x2 x3 with vertices e3, e2
    let w = dir.join("bivertex.json");
    std::fs::write(
        &w,
        r#"{
  "equation": {"nvars": 4, "degree": 2, "terms": [
    {"exps": [1,1,0,0], "coeff": "1"},
    {"exps": [0,0,1,1], "coeff": "1"}
  ]},
  "p1": ["0","0","0","1"],
  "p2": ["0","0","1","0"]
}"#,
    )
    .unwrap();
    let out = run(&["double-projection", "--in", w.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["certificate"]["delta"], 2);
    assert_eq!(parsed["certificate"]["phi"]["degree"], 3);
}

#[test]
fn quadro_quadric_and_compose_commands() {
    let dir = tmp_dir("qq");
    let input = dir.join("qq.json");
    std::fs::write(
        &input,
        r#"{
  "p": ["1","0","0","0"],
  "hyperplane": [["0","1","0","0"], ["0","0","1","0"], ["0","0","0","1"]],
  "q": {"nvars": 3, "degree": 2, "terms": [
    {"exps": [1,1,0], "coeff": "1"},
    {"exps": [0,0,2], "coeff": "-1"}
  ]}
}"#,
    )
    .unwrap();
    let qq_out = dir.join("qq_out.json");
    let out = run(&[
        "quadro-quadric",
        "--in",
        input.to_str().unwrap(),
        "--out",
        qq_out.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&qq_out).unwrap()).unwrap();
    assert_eq!(parsed["basis"].as_array().unwrap().len(), 4);

    // compose the involution with itself: degree multiplies, no cancellation
    let fwd = dir.join("fwd.json");
    std::fs::write(&fwd, serde_json::to_string(&parsed["forward"]).unwrap()).unwrap();
    let out = run(&[
        "compose",
        "--maps",
        fwd.to_str().unwrap(),
        fwd.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let composed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(composed["degree"], 4);
}

#[test]
fn dejonquieres_command_solves_constraints() {
    let dir = tmp_dir("dj");
    let input = dir.join("constraints.json");
    std::fs::write(
        &input,
        r#"{
  "ambient_dim": 2,
  "vertex": ["1","0","0"],
  "moves": [{"from": ["0","1","1"], "to": ["2","1","1"]}],
  "fixed": [["1","1","2"]]
}"#,
    )
    .unwrap();
    let out = run(&[
        "dejonquieres",
        "--in",
        input.to_str().unwrap(),
        "--seed",
        "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = parsed["map"]["degree"].as_u64().unwrap() as usize;
    assert_eq!(
        parsed["certificate"]["phi"]["degree"].as_u64().unwrap() as usize,
        d * d - 1
    );
}

const THREE_CONCURRENT_LINES: &str = r#"{
  "ambient_dim": 3,
  "components": [
    {"arity": 2, "forms": [
      {"nvars": 2, "degree": 1, "terms": [{"exps": [1,0], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": [{"exps": [0,1], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": []},
      {"nvars": 2, "degree": 1, "terms": []}
    ]},
    {"arity": 2, "forms": [
      {"nvars": 2, "degree": 1, "terms": [{"exps": [1,0], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": []},
      {"nvars": 2, "degree": 1, "terms": [{"exps": [0,1], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": []}
    ]},
    {"arity": 2, "forms": [
      {"nvars": 2, "degree": 1, "terms": [{"exps": [1,0], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": []},
      {"nvars": 2, "degree": 1, "terms": []},
      {"nvars": 2, "degree": 1, "terms": [{"exps": [0,1], "coeff": "1"}]}
    ]}
  ]
}"#;

#[test]
fn contract_reports_three_distinct_points() {
    let dir = tmp_dir("contract");
    let scheme = dir.join("three_lines.json");
    std::fs::write(&scheme, THREE_CONCURRENT_LINES).unwrap();
    let chain = dir.join("chain.json");
    let out = run(&[
        "contract",
        "--scheme",
        scheme.to_str().unwrap(),
        "--seed",
        "3",
        "--samples",
        "8",
        "--out",
        chain.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("3 distinct points"), "{stderr}");
    let out = run(&["verify", "--chain", chain.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn pipeline_equiv_degenerate_run() {
    // X = Y: every round may use degree-one monoids, so this stays fast
    let dir = tmp_dir("pipeline");
    let line = r#"{
  "ambient_dim": 3,
  "components": [
    {"arity": 2, "forms": [
      {"nvars": 2, "degree": 1, "terms": [{"exps": [1,0], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": [{"exps": [0,1], "coeff": "1"}]},
      {"nvars": 2, "degree": 1, "terms": []},
      {"nvars": 2, "degree": 1, "terms": []}
    ]}
  ]
}"#;
    let x = dir.join("x.json");
    std::fs::write(&x, line).unwrap();
    let chain = dir.join("chain.json");
    let out = run(&[
        "pipeline-equiv",
        "--x",
        x.to_str().unwrap(),
        "--y",
        x.to_str().unwrap(),
        "--seed",
        "5",
        "--samples",
        "6",
        "--out",
        chain.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", "--chain", chain.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn search_exhaustion_exits_with_code_three() {
    let dir = tmp_dir("exhaust");
    // an impossible degree-capped request: move a point while fixing
    // many points with the cap at degree 2 leaves no solution space
    let input = dir.join("constraints.json");
    std::fs::write(
        &input,
        r#"{
  "ambient_dim": 2,
  "vertex": ["1","0","0"],
  "moves": [{"from": ["0","1","1"], "to": ["2","1","1"]}],
  "fixed": [["1","1","2"], ["1","2","1"], ["2","1","5"], ["1","3","1"],
            ["4","1","1"], ["1","5","2"], ["3","2","5"], ["5","1","3"]],
  "degree": 2
}"#,
    )
    .unwrap();
    let out = run(&[
        "dejonquieres",
        "--in",
        input.to_str().unwrap(),
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
