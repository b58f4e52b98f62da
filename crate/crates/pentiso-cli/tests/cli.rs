//! End-to-end runs of the compiled binary: exit codes, pipes, formats.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pentiso"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn pentiso")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn pentiso");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait pentiso")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn claims_all_green_and_deterministic() {
    let out = run(&["claims"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("0 fail of"), "{text}");
    assert!(text.contains("documented discrepancies"));
    let again = run(&["claims"]);
    assert_eq!(out.stdout, again.stdout, "claims output not byte-stable");
}

#[test]
fn claims_json_report_parses() {
    let out = run(&["claims", "--filter", "const.*", "--json", "-"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    let rows = rows.as_array().expect("array");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["status"], "pass");
    assert!(rows[0]["id"].as_str().unwrap().starts_with("const."));
}

#[test]
fn claims_unknown_filter_is_a_usage_error() {
    let out = run(&["claims", "--filter", "no.such.claim"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no claim id matches"));
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["claims", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn minimize_matches_the_right_angle_preset() {
    let out = run_with_stdin(&["minimize", "--constraints", "-"], r#"{"fix": [[0, 90.0]]}"#);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("angles_deg: 90.000000 112.500000 112.500000 112.500000 112.500000"));
    assert!(text.contains("perimeter: 3.832866"));
}

#[test]
fn minimize_json_polygon_schema() {
    let out = run_with_stdin(
        &["minimize", "--constraints", "-", "--json"],
        r#"{"fix": [[0, 90.0]], "equate": [[1, 2]]}"#,
    );
    assert!(out.status.success());
    let poly: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("polygon json");
    assert_eq!(poly["construction"], "circumscribed");
    assert_eq!(poly["angles_deg"].as_array().unwrap().len(), 5);
    assert_eq!(poly["vertices"].as_array().unwrap().len(), 5);
    let a0 = poly["angles_deg"][0].as_f64().unwrap();
    assert!((a0 - 90.0).abs() < 1e-9);
}

#[test]
fn minimize_rejects_bad_index_and_bad_json() {
    let out = run_with_stdin(&["minimize", "--constraints", "-"], r#"{"fix": [[7, 90.0]]}"#);
    assert_eq!(out.status.code(), Some(2));
    let out = run_with_stdin(&["minimize", "--constraints", "-"], "not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn curve_margin_changes_sign_at_the_angle_bound() {
    let out = run(&["curve", "--from", "80.5", "--to", "81.5", "--step", "0.5", "--out", "-"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("angle_deg,min_perimeter,margin"));
    let margins: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(margins.len(), 3);
    assert!(margins[0] > 0.0 && margins[2] < 0.0, "{margins:?}");
}

#[test]
fn generate_validate_pipe_round_trips() {
    let mesh = run(&["tiling", "generate", "cairo", "--periods", "2x2"]);
    assert!(mesh.status.success());
    let out = run_with_stdin(&["tiling", "validate", "-"], &stdout(&mesh));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("per_tile_edge_length: 1.931852"), "{text}");
    assert!(text.contains("euler_characteristic: 0"));
    assert!(text.trim_end().ends_with("valid"));
}

#[test]
fn validate_flags_a_corrupted_mesh() {
    // scale everything by 1%: walks still close, tile areas leave 1
    let mesh = run(&["tiling", "generate", "prismatic", "--periods", "1x1"]);
    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&mesh)).expect("mesh json");
    let scale = |v: &mut serde_json::Value| {
        let x = v.as_f64().unwrap();
        *v = serde_json::json!(x * 1.01);
    };
    for vertex in doc["vertices"].as_array_mut().unwrap() {
        for coord in vertex.as_array_mut().unwrap() {
            scale(coord);
        }
    }
    for row in doc["lattice"].as_array_mut().unwrap() {
        for coord in row.as_array_mut().unwrap() {
            scale(coord);
        }
    }
    let out = run_with_stdin(&["tiling", "validate", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FaceArea"), "{text}");
    assert!(text.trim_end().ends_with("invalid"));
}

#[test]
fn stats_census_counts_cairo_block() {
    let mesh = run(&["tiling", "generate", "cairo", "--periods", "2x2"]);
    let out = run_with_stdin(&["tiling", "stats", "-", "--json"], &stdout(&mesh));
    assert!(out.status.success());
    let tally: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("census json");
    assert_eq!(tally["faces"], 16);
    assert_eq!(tally["efficient_pentagons"], 16);
    assert_eq!(tally["efficient_degree3_vertices"], 16);
    assert_eq!(tally["efficient_degree4_vertices"], 8);
}

#[test]
fn equilateral_champion_json() {
    let out = run(&["equilateral", "--family", "champion", "--json"]);
    assert!(out.status.success());
    let poly: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("polygon json");
    assert_eq!(poly["construction"], "explicit");
    assert_eq!(poly["vertices"].as_array().unwrap().len(), 5);
    let angles: Vec<f64> = poly["angles_deg"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_f64().unwrap())
        .collect();
    assert!((angles[1] - 131.409622).abs() < 1e-4, "{angles:?}");
}

#[test]
fn equilateral_special_rejects_a_pinned_angle() {
    let out = run(&["equilateral", "--family", "special", "--a1-deg", "90"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncate_defaults_to_the_first_tile_centroid() {
    let out = run(&["truncate", "--tiling", "cairo", "--radius", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("disk_area: 452.389342"), "{text}");
    let rho: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("rho_hat: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((rho - 1.93).abs() < 0.05, "{rho}");
}

#[test]
fn angle_tilings_lists_figures_and_the_five_corner_check() {
    let out = run(&["angle-tilings", "--angles", "90,108,108,108,126"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("figures: 2"), "{text}");
    assert!(text.contains("4x90.000000"));
    assert!(text.contains("1x108.000000 + 2x126.000000"));
    assert!(text.contains("tiles_all_five: true"));
    let out = run(&["angle-tilings", "--angles", "108"]);
    assert!(stdout(&out).contains("figures: 0"));
}
