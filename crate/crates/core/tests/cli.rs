mod common;

use std::path::PathBuf;

use common::{data, run_twice};
use serde_json::Value;
use sha2::{Digest, Sha256};

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quiverbox-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn report_envelope_and_digest() {
    let path = data("dual_numbers.alg");
    let out = run_twice(&["algebra", "inspect", &path]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out.stdout);
    assert_eq!(r["tool"], "quiverbox");
    assert_eq!(r["subcommand"], "algebra inspect");
    let expected = hex::encode(Sha256::digest(std::fs::read(&path).unwrap()));
    assert_eq!(r["inputs"][0]["sha256"], expected.as_str());
    assert_eq!(r["options"]["seed"], 20_240_601);
    assert_eq!(r["payload"]["dim"], 2);
}

#[test]
fn seed_is_echoed() {
    let path = data("a2.alg");
    let out = run_twice(&["par", "estimate", &path, "--ranks", "1,1/1,1", "--mode", "sample", "--seed", "99"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out.stdout);
    assert_eq!(r["options"]["seed"], 99);
    assert_eq!(r["payload"]["estimate"]["seed"], 99);
}

#[test]
fn exact_par_on_dual_numbers() {
    let path = data("dual_numbers.alg");
    let out = run_twice(&["par", "estimate", &path, "--ranks", "1/1/1", "--field", "F3"]);
    let r = json(&out.stdout);
    let e = &r["payload"]["estimate"];
    assert_eq!((e["lo"].as_i64(), e["hi"].as_i64()), (Some(0), Some(0)));
    assert_eq!(e["census"]["points"], 4);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let path = data("cubic.alg");
    let stdout = run_twice(&["box", "build", &path, "--window", "0..2"]).stdout;
    let target = scratch("box.json", "");
    let t = target.display().to_string();
    let out = run_twice(&["box", "build", &path, "--window", "0..2", "--out", &t]);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), stdout);
}

#[test]
fn missing_file_is_input_error() {
    let out = run_twice(&["algebra", "inspect", "/nonexistent/x.alg"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["kind"], "io");
}

#[test]
fn parse_errors_carry_positions() {
    let p = scratch("bad.alg", "[field]\nQ\n[vertices]\nabc\n");
    let out = run_twice(&["algebra", "inspect", &p.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let e = &json(&out.stderr)["error"];
    assert_eq!((e["kind"].as_str(), e["line"].as_u64(), e["column"].as_u64()), (Some("parse"), Some(4), Some(1)));
}

#[test]
fn arrow_outside_the_quiver_is_rejected() {
    let p = scratch("far.alg", "[field]\nQ\n[vertices]\n1\n[arrows]\nx: 1 -> 7\n[relations]\n[truncation]\n1\n");
    let out = run_twice(&["algebra", "inspect", &p.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_admissible_relation_is_rejected() {
    let p = scratch("short.alg", "[field]\nQ\n[vertices]\n1\n[arrows]\nx: 1 -> 1\n[relations]\nx\n[truncation]\n1\n");
    let out = run_twice(&["algebra", "inspect", &p.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["kind"], "non-admissible");
}

#[test]
fn oversized_enumeration_is_refused() {
    let path = data("brustle_a0.alg");
    let out = run_twice(&[
        "par", "estimate", &path, "--ranks", "1,1,1,1,1,1/1,1,1,1,1,1", "--field", "F3", "--cap", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"]["kind"], "infeasible");
}

#[test]
fn exact_mode_needs_a_finite_field() {
    let path = data("dual_numbers.alg");
    let out = run_twice(&["par", "estimate", &path, "--ranks", "1/1", "--field", "Q"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn complex_commands() {
    let unit = data("complexes/dual_unit.cpx");
    let r = json(&run_twice(&["complex", "check", &unit]).stdout);
    assert_eq!(r["payload"]["dsquared_zero"], true);
    assert_eq!(r["payload"]["minimal"], false);
    let m = json(&run_twice(&["complex", "minimalize", &unit]).stdout);
    assert_eq!(m["payload"]["ranks"], serde_json::json!([[0], [1], [1]]));
    let h = json(&run_twice(&["complex", "homology", &unit]).stdout);
    assert!(h["payload"].is_object());
    let (x, y) = (data("complexes/dual_x.cpx"), data("complexes/dual_x_neg.cpx"));
    let iso = json(&run_twice(&["complex", "iso", &x, &y]).stdout);
    assert_eq!(iso["payload"]["verdict"]["isomorphic"], true);
}

#[test]
fn broken_complex_fails_check() {
    let alg = data("dual_numbers.alg");
    let text = format!("[algebra]\n{alg}\n[ranks]\n0: 1\n1: 1\n2: 1\n[entries]\n1 1 1 e1 1\n2 1 1 e1 1\n");
    let p = scratch("broken.cpx", &text);
    let out = run_twice(&["complex", "check", &p.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out.stdout);
    assert_eq!(r["payload"]["dsquared_zero"], false);
}

#[test]
fn family_commands() {
    let fam = data("x2_minus_lambda_x.fam");
    let d = json(&run_twice(&["family", "dims", &fam]).stdout);
    assert_eq!(d["payload"]["flat_on_grid"], true);
    let brustle = data("brustle.fam");
    let d = json(&run_twice(&["family", "dims", &brustle, "--grid", "0,1,2"]).stdout);
    assert_eq!(d["payload"]["flat_on_grid"], false);
    let l = json(&run_twice(&["family", "flatlimit", &brustle]).stdout);
    assert_eq!(l["payload"]["limit_dim"], 15);
    assert_eq!(l["payload"]["extra_relations"], serde_json::json!(["xi1*alpha"]));
    let s = json(&run_twice(&["family", "parscan", &fam, "--ranks", "1,1", "--grid", "0..3"]).stdout);
    assert_eq!(s["payload"]["semicontinuity"], true);
}

#[test]
fn usage_errors_exit_with_one() {
    let out = run_twice(&["par", "estimate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_twice(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn brustle_demo() {
    let r = json(&run_twice(&["brustle", "demo"]).stdout);
    let p = &r["payload"];
    assert_eq!(p["dims"]["fibres"][0]["dim"], 16);
    assert_eq!(p["dims"]["fibres"][1]["dim"], 15);
    assert_eq!(p["flat_limit"]["limit_dim"], 15);
    let rows = p["par_table"]["rows"].as_array().unwrap();
    // the special fibre carries at least one parameter
    let lo: Vec<i64> = rows.iter().map(|r| r["estimate"]["lo"].as_i64().unwrap()).collect();
    assert!(lo[0] >= 1 && lo[0] >= lo[1]);
}

#[test]
fn text_format_renders_tables() {
    let path = data("brustle.fam");
    let out = run_twice(&["family", "dims", &path, "--grid", "0,1,2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let t = String::from_utf8(out.stdout).unwrap();
    assert!(t.starts_with("quiverbox "));
    assert!(t.contains("  dim  lambda\n  16   0\n  15   1\n"));
    assert!(t.contains("generic_dim: 15\n"));
}
