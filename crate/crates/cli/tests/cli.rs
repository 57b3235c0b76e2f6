use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slopestab")).args(args).output().expect("binary runs")
}

fn schema_validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Parses stdout as JSON and validates it against the shipped schema.
fn json_of(out: &Output) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let validator = schema_validator();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
    doc
}

fn check<'a>(doc: &'a Value, id: &str) -> &'a Value {
    doc["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn verify_product_passes() {
    let out = run(&["verify", "product", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(check(&doc, "mu at s=q equals -2")["pass"], true);
    assert_eq!(doc["pass"], true);
}

#[test]
fn verify_product_with_branched_cover() {
    let out = run(&["verify", "product", "--q", "9", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(check(&doc, "L_t threshold equals q/(k-1)")["pass"], true);
}

#[test]
fn verify_kodaira_reports_invariants_and_the_endpoint_discrepancy() {
    let out = run(&["verify", "kodaira", "--q", "3", "--r", "2", "--G", "2"]);
    let doc = json_of(&out);
    assert_eq!(check(&doc, "tau == 256")["pass"], true);
    assert_eq!(check(&doc, "X2 c-window at s=q, eps=0 (from the reduced slopes)")["pass"], true);
    let failing: Vec<&str> = doc["suites"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["X2 c-window at s=q, eps=0 (published endpoint)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_jflow_reports_not_ample() {
    let out = run(&["verify", "jflow", "--q", "2", "--s", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["suites"][0]["parameters"]["verdict"], "NotAmple");
    assert_eq!(check(&doc, "verdict from s^2 + q > 2qs")["computed"], "NotAmple");
}

#[test]
fn verify_markdown() {
    let out = run(&["verify", "jflow", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("## jflow (pass)"));
}

#[test]
fn product_boundary_window() {
    let out = run(&["window", "product_c", "--q", "5", "--s", "boundary"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["text"], "c in (0, 3/4)");
    assert_eq!(doc["boundary_limit"], true);
    let csv = run(&["window", "product_c", "--q", "5", "--s", "boundary", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "variable,lo,lo_closed,hi,hi_closed,boundary_limit\nc,0,false,3/4,false,true\n"
    );
}

#[test]
fn kodaira_window() {
    let out = run(&["window", "x2_c", "--q", "3", "--r", "2", "--G", "2", "--eps", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["intervals"][0]["hi"]["exact"], "9/26");
}

#[test]
fn product_s_window_starts_at_q() {
    let out = run(&["window", "product_s", "--q", "2", "--c", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["intervals"][0]["lo"]["exact"], "2");
    assert_eq!(doc["intervals"][0]["lo_closed"], false);
    assert!(doc["intervals"][0]["hi"]["enclosure"].is_array());
}

fn cone_csv(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cone.csv");
    let mut full = vec!["cone"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn cone_rays_and_grid() {
    let text = cone_csv(&["--q", "9", "--k", "3", "--samples", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "record,family,threshold_lo,threshold_hi,s_coeff,delta_coeff,is_ample");
    assert_eq!(lines[1], "ray,l,9,9,,,");
    assert_eq!(lines[2], "ray,L,9/2,9/2,,,");
    assert_eq!(lines.iter().filter(|l| l.starts_with("grid,")).count(), 4);

    let text = cone_csv(&["--q", "4", "--general-moduli"]);
    assert!(text.contains("ray,l,4,4,,,\nray,L,2,2,,,\n"));
}

#[test]
fn cone_output_is_deterministic() {
    let args = ["--q", "5", "--sc-bounds", "9/4", "5/2", "--samples", "9"];
    assert_eq!(cone_csv(&args), cone_csv(&args));
    let a = run(&["report", "product", "--q", "3", "--s", "7/2"]);
    let b = run(&["report", "product", "--q", "3", "--s", "7/2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn product_report_destabilizes() {
    let out = run(&["report", "product", "--q", "2", "--s", "201/100", "--c", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["stability"]["destabilized"], true);
    assert_eq!(doc["intersection_numbers"]["Z.Z"]["value"], "-2");
}

#[test]
fn kodaira_report_invariants() {
    let out = run(&["report", "kodaira", "--q", "3", "--r", "2", "--G", "2", "--t", "2", "--eps", "1/1000"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["invariants"]["signature"]["value"], "256");
    assert_eq!(doc["invariants"]["K_squared_lattice"]["value"], "5888");
    assert!(doc["L_family"]["mu_X"]["value"].is_string());
    let md = run(&["report", "kodaira", "--format", "markdown"]);
    assert!(String::from_utf8(md.stdout).unwrap().contains("- signature: 256"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["report", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "product", "--q", "4", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "kodaira", "--r", "2", "--G", "3"]).status.code(), Some(2));
    assert_eq!(run(&["window", "product_c", "--q", "2", "--s", "3/2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "jflow", "--q", "2", "--s", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "product", "--q", "abc"]).status.code(), Some(2));
}

#[test]
fn io_failure_exits_one() {
    let out = run(&["cone", "--out", "/nonexistent-dir/cone.csv"]);
    assert_eq!(out.status.code(), Some(1));
}
