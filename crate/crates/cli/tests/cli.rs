use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conformal")).args(args).output().expect("binary runs")
}

fn report(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(v["schema"], 1);
    v
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("conformal-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn virasoro_h2() {
    let v = report(&["h2", "--algebra", "vir", "--delta", "1", "--alpha", "0", "--max-degree", "8"], 0);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"], serde_json::json!(["l1 - l2"]));
    assert_eq!(report(&["h2", "--delta", "-1", "--max-degree", "10"], 0)["dim"], 2);
}

#[test]
fn semidirect_sweep() {
    let v = report(&["sweep-h2", "--a", "1", "--b", "0", "--max-degree", "10"], 0);
    assert_eq!(v["dim"], 6);
    assert!(!v["cells"][0]["per_degree"].as_array().unwrap().is_empty());

    let v = report(&["sweep-h2", "--a", "1,2", "--b", "2", "--max-degree", "10"], 1);
    let bad: Vec<&Value> = v["cells"].as_array().unwrap().iter().filter(|c| c["matches"] == false).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["a"], "1");
    assert!(!bad[0]["witness"].as_array().unwrap().is_empty());
}

#[test]
fn axioms_builtin_and_file() {
    assert_eq!(report(&["axioms", "--algebra", "gc1", "--bound", "3"], 0)["passed"], true);
    assert_eq!(report(&["axioms", "--algebra", "semidirect", "--a", "3/2"], 0)["passed"], true);

    let good = scratch("sd.lca", "algebra SD(a) { generators L, J; bracket [L _ L] = (d + 2*l) L; bracket [L _ J] = (d + a*l) J; bracket [J _ J] = 0; }");
    let v = report(&["axioms", "--file", good.to_str().unwrap(), "--param", "a=5"], 0);
    assert_eq!(v["generators"], 2);

    let bad = scratch("bad.lca", "algebra V() { generators L; bracket [L _ L] = (d + 3*l) L; }");
    let v = report(&["axioms", "--file", bad.to_str().unwrap()], 1);
    assert_eq!(v["passed"], false);
    assert!(!v["skew_failures"].as_array().unwrap().is_empty());
    assert!(v["skew_failures"][0]["witness"].as_str().unwrap().contains('L'));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["h2", "--delta", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["axioms", "--algebra", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let p = scratch("dangling.lca", "algebra V() { generators L; bracket [L _ L] = d + ; }");
    let out = run(&["parse", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:51"));
}

#[test]
fn parse_reports_shape() {
    let p = scratch("vir.lca", "# the Virasoro algebra\nalgebra Vir() { generators L; bracket [L _ L] = (d + 2*l) L; }\n");
    let v = report(&["parse", p.to_str().unwrap()], 0);
    assert_eq!(v["generators"], serde_json::json!(["L"]));
}

#[test]
fn closed_form() {
    for c in ["0", "-1"] {
        let v = report(&["verify-closed-form", "--c", c, "--bound", "4"], 0);
        assert_eq!(v["matches_reference"], true);
    }
    assert_eq!(run(&["verify-closed-form", "--c", "3"]).status.code(), Some(2));
}

#[test]
fn repcheck_defaults() {
    let v = report(&["repcheck"], 0);
    assert_eq!(v["cells"].as_array().unwrap().len(), 24);
    assert_eq!(v["rank1"]["only_trivial"], true);
    let v = report(&["repcheck", "--case", "3", "--i", "3", "--source-delta", "2", "--degree", "6", "--rank1", "0"], 0);
    assert_eq!(v["cells"][0]["dim"], 0);
    assert_eq!(run(&["repcheck", "--case", "1", "--i", "5", "--source-delta", "0"]).status.code(), Some(2));
}

#[test]
fn classify_flags_discrepancies() {
    let v = report(&["classify"], 1);
    assert_eq!(v["parameters"], serde_json::json!(["b", "c"]));
    assert_eq!(v["b_forced"], false);
    let failing: Vec<&str> = v["failing_claims"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert!(failing.contains(&"b forced to zero (b4 kept)"), "{failing:?}");
    assert_eq!(v["witness"].as_array().unwrap().len(), failing.len());
}

#[test]
fn deterministic_output_file() {
    let out = std::env::temp_dir().join(format!("conformal-cli-{}-report.json", std::process::id()));
    let args = ["sweep-h2", "--a", "2,3", "--b", "1,2", "--max-degree", "6"];
    let first = run(&args).stdout;
    assert_eq!(run(&args).stdout, first);
    let mut with_out: Vec<&str> = args.to_vec();
    let path = out.to_str().unwrap().to_string();
    with_out.extend(["--out", &path]);
    let r = run(&with_out);
    assert!(r.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), first);
}
