use std::path::PathBuf;

use serde_json::Value;
use thetalift::cli::run_args;

fn run(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["thetalift"];
    full.extend_from_slice(args);
    let out = run_args(full);
    let text = if out.code == 2 { &out.stderr } else { &out.stdout };
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(v["schemaVersion"], 1);
    (out.code, v)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thetalift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn weil_check_on_a1() {
    let (code, v) = run(&["weil-check", "--lattice", "A1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"], "relations hold");
}

#[test]
fn reflective_report_on_ii19() {
    let (code, v) = run(&["weyl-reflective", "--form", "ii19-e4sq"]);
    assert_eq!(code, 0);
    assert_eq!(v["norm"], "1240");
    assert_eq!(v["weylVector"]["convention"], "boundary-included");
}

#[test]
fn convention_switch_reaches_the_weyl_vector() {
    let (code, v) = run(&["weyl-vector", "--form", "ii125-leech", "--convention", "boundary-excluded"]);
    assert_eq!(code, 0);
    assert_eq!(v["weylVector"]["norm"], "0");
    assert!(v["weylVector"]["rho"].as_array().unwrap().iter().all(|x| x == "0"));
    let (code, _) = run(&["weyl-vector", "--form", "ii125-leech", "--convention", "sideways"]);
    assert_eq!(code, 2);
}

#[test]
fn series_eval_j() {
    let (code, v) = run(&["series-eval", "E4^3 / Delta", "--prec", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["constantTerm"], "744");
    let (code, v) = run(&["series-eval", "E4^^3"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("parse error"));
}

#[test]
fn shimura_lift_and_precision_error() {
    let (code, v) = run(&["lift-shimura", "--mplus", "2"]);
    assert_eq!(code, 0);
    let terms = v["series"]["terms"].as_array().unwrap();
    let vals: Vec<&str> = terms.iter().map(|t| t["val"].as_str().unwrap()).collect();
    assert_eq!(vals, ["64", "-32256", "11536128"]);
    let (code, v) = run(&["lift-shimura", "--mplus", "2", "--prec", "5"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("largest feasible precision is 4"));
    let (code, _) = run(&["lift-shimura", "--mplus", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn shimura_from_file() {
    let p = scratch("stream.json", r#"[{"exp": 0, "val": "1"}, {"exp": 1, "val": 3}, {"exp": 4, "val": "1/2"}]"#);
    let (code, v) = run(&["lift-shimura", "--input", p.to_str().unwrap(), "--mplus", "4"]);
    assert_eq!(code, 0);
    let terms = v["series"]["terms"].as_array().unwrap();
    // −B₄/8 = 1/240; b(1) = 3; b(2) = c(4) + 8c(1) = 49/2.
    assert_eq!(terms[0]["val"], "1/240");
    assert_eq!(terms[1]["val"], "3");
    assert_eq!(terms[2]["val"], "49/2");
}

#[test]
fn congruence_failure_exits_one() {
    let form = r#"{
        "lattice": "A1(-1)",
        "weight": ["-1/2", "0"],
        "components": [
            {"element": [0], "series": {"terms": [{"exp": "0", "val": "1"}], "truncation": "1"}},
            {"element": [1], "series": {"expDenominator": 4, "terms": [{"exp": "-1/4", "val": "1"}], "truncation": "3/4"}}
        ]
    }"#;
    let p = scratch("form.json", form);
    let (code, v) = run(&["weyl-congruence", "--form", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["constant"], "3");
    assert_eq!(v["divisibleBy24"], false);
    let (code, v) = run(&["weyl-congruence", "--form", "a1-congruence"]);
    assert_eq!(code, 0);
    assert_eq!(v["constant"], "12");
}

#[test]
fn invalid_form_exits_one() {
    let form = r#"{
        "lattice": "A1(-1)",
        "weight": ["-1/2", "0"],
        "components": [
            {"element": [1], "series": {"expDenominator": 4, "terms": [{"exp": "1/4", "val": "1"}], "truncation": "3/4"}}
        ]
    }"#;
    let p = scratch("bad.json", form);
    let (code, v) = run(&["vvf-validate", "--form", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!v["issues"].as_array().unwrap().is_empty());
}

#[test]
fn missing_file_and_bad_lattice_exit_two() {
    let (code, _) = run(&["latt-info", "--lattice", "Z7"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["weyl-vector", "--form", "/nonexistent/form.json"]);
    assert_eq!(code, 2);
    let out = run_args(["thetalift", "no-such-command"]);
    assert_eq!(out.code, 2);
}

#[test]
fn lattice_file_and_theta() {
    let p = scratch("a2.json", r#"{"name": "A2", "gram": [[2, -1], [-1, 2]]}"#);
    let (code, v) = run(&["latt-theta", "--lattice", p.to_str().unwrap(), "--prec", "4"]);
    assert_eq!(code, 0);
    // A₂ has no vectors of norm 4.
    let exps: Vec<&str> = v["series"]["terms"].as_array().unwrap().iter().map(|t| t["exp"].as_str().unwrap()).collect();
    assert_eq!(exps, ["0", "1", "3"]);
    let vals: Vec<&str> = v["series"]["terms"].as_array().unwrap().iter().map(|t| t["val"].as_str().unwrap()).collect();
    assert_eq!(vals, ["1", "6", "6"]);
    let (code, v) = run(&["latt-theta", "--lattice", "A2", "--coset", "1/3,2/3", "--prec", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["series"]["terms"][0]["exp"], "1/3");
    assert_eq!(v["series"]["terms"][0]["val"], "3");
}

#[test]
fn product_ray_on_level_two() {
    let (code, v) = run(&[
        "lift-product",
        "--datum",
        "level-two",
        "--height-vector",
        "1,6,0,0,0,0,0,0,0,0",
        "--height-bound",
        "3",
        "--ray",
        "0,1,0,0,0,0,0,0,0,0",
    ]);
    assert_eq!(code, 0);
    let c: Vec<&str> = v["ray"]["coefficients"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(c, ["1", "-16", "112", "-448"]);
    assert_eq!(v["datum"]["constant"], "1/16");
}

#[test]
fn regress_filter_selects_by_prefix() {
    let (code, v) = run(&["paper-regress", "--filter", "shimura"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["shimura/coefficients", "shimura/binomial-grid"]);
    let (_, v) = run(&["paper-regress", "--filter", "nothing-matches"]);
    assert_eq!(v["passed"], 0);
}

#[test]
fn output_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["thetalift", "latt-info", "--lattice", "I2,10even"],
        &["thetalift", "weyl-vector", "--form", "ii19-e4sq"],
        &["thetalift", "weyl-phi", "--form", "toy-u-a1", "--vector", "3/1000,1,1/997"],
        &["thetalift", "lift-product", "--datum", "level-two", "--height-vector", "1,3,0,0,0,0,0,0,0,0", "--height-bound", "3"],
        &["thetalift", "series-eval", "eta^16 / eta(2)^8", "--format", "text"],
        &["thetalift", "paper-regress", "--filter", "series"],
    ];
    for args in cases {
        let a = run_args(args.iter().copied());
        let b = run_args(args.iter().copied());
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a, b, "{args:?}");
    }
}
