use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depthscope")).args(args).env("DEPTHSCOPE_LOG", "error").output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn diamond_center_has_depth_one() {
    let v = ok_json(&["depth", "--dataset", "diamond", "--query", "0,0"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"][0]["depth"], 1.0);
}

#[test]
fn brain_median_report() {
    let v = ok_json(&["median", "--dataset", "brain"]);
    assert!((v["max_depth"].as_f64().unwrap() - 0.769683982150).abs() < 1e-9);
    assert_eq!(v["kind"], "point");
    let c = &v["centroid"];
    let q = format!("{},{}", c["x"], c["y"]);
    let d = ok_json(&["depth", "--dataset", "brain", "--query", &q]);
    assert!((d["rows"][0]["depth"].as_f64().unwrap() - 0.769683982150).abs() < 1e-8);
}

#[test]
fn diamond_median_is_the_origin() {
    let v = ok_json(&["median", "--dataset", "diamond"]);
    assert_eq!(v["max_depth"], 1.0);
    let c = &v["centroid"];
    assert!(c["x"].as_f64().unwrap().abs() < 1e-9 && c["y"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn query_file_rows_keep_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.csv");
    fs::write(&q, "# three queries\n0.5,0.25\n-3,4\n0,0\n").unwrap();
    let v = ok_json(&["depth", "--dataset", "diamond", "--queries", q.to_str().unwrap()]);
    let rows = v["rows"].as_array().unwrap();
    let xy: Vec<(f64, f64)> = rows.iter().map(|r| (r["x"].as_f64().unwrap(), r["y"].as_f64().unwrap())).collect();
    assert_eq!(xy, vec![(0.5, 0.25), (-3.0, 4.0), (0.0, 0.0)]);
}

#[test]
fn diamond_third_contour_is_the_square() {
    let v = ok_json(&["contours", "--dataset", "diamond", "--alpha", "0.3333333333333333"]);
    let verts = v["contours"][0]["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 4);
    for p in verts {
        assert!((p["x"].as_f64().unwrap().abs() - 1.0).abs() < 1e-9);
        assert!((p["y"].as_f64().unwrap().abs() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn brain_eight_contours_nest() {
    let v = ok_json(&["contours", "--dataset", "brain", "--alpha", "0.1,0.15,0.2,0.3,0.4,0.5,0.6,0.7"]);
    let cs = v["contours"].as_array().unwrap();
    assert_eq!(cs.len(), 8);
    let areas: Vec<f64> = cs.iter().map(|c| c["area"].as_f64().unwrap()).collect();
    assert!(areas.windows(2).all(|w| w[0] > w[1]), "{areas:?}");
}

#[test]
fn population_mode_gives_nine_ellipses() {
    let v = ok_json(&["contours", "--population"]);
    let cs = v["contours"].as_array().unwrap();
    assert_eq!(cs.len(), 9);
    let r = cs[4]["radius"].as_f64().unwrap();
    assert!((r - 0.6744898).abs() < 1e-7);
}

#[test]
fn empty_contours_warn_and_all_empty_fails() {
    let out = run(&["contours", "--dataset", "brain", "--alpha", "0.5,0.9"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["contours"][1]["empty"], true);

    let out = run(&["contours", "--dataset", "brain", "--alpha", "0.9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("empty"));
}

#[test]
fn simulate_row_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (scenario, rows) in [("example1", 60), ("example2", 400), ("mixture", 2500)] {
        let path = dir.path().join(format!("{scenario}.csv"));
        let out = run(&["simulate", "--scenario", scenario, "--seed", "7", "--output", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}", stderr(&out));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), rows);
        let side: Value =
            serde_json::from_str(&fs::read_to_string(format!("{}.provenance.json", path.display())).unwrap()).unwrap();
        assert_eq!(side["scenario"], scenario);
        assert_eq!(side["seed"], 7);
        assert_eq!(side["n"], rows);
    }
}

#[test]
fn unknown_scenario_is_an_input_error() {
    let out = run(&["simulate", "--scenario", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown scenario"));
}

#[test]
fn malformed_csv_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    fs::write(&p, "1,2\n3,4\n5,oops\n").unwrap();
    let out = run(&["median", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn degenerate_data_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("line.csv");
    fs::write(&p, "0,0\n1,1\n2,2\n3,3\n4,4\n").unwrap();
    let out = run(&["depth", "--input", p.to_str().unwrap(), "--query", "0,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("general position"), "{}", stderr(&out));
}

#[test]
fn missing_data_source_is_a_usage_error() {
    let out = run(&["median"]);
    assert_eq!(out.status.code(), Some(2));
}

fn contours_of(path: &Path) -> String {
    // contamination puts several points on the line x = 6
    let out = run(&["contours", "--input", path.to_str().unwrap(), "--allow-collinear", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn simulate_then_contours_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        assert!(run(&["simulate", "--scenario", "example2", "--seed", "3", "--output", p.to_str().unwrap()])
            .status
            .success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let first = contours_of(&a);
    assert_eq!(first, contours_of(&b));
    // the CSV round trip reproduces the in-memory sample exactly
    let direct = run(&["contours", "--dataset", "example2", "--seed", "3", "--format", "csv"]);
    assert_eq!(first, String::from_utf8(direct.stdout).unwrap());
}

#[test]
fn svg_is_well_formed() {
    let out = run(&["contours", "--dataset", "example1", "--format", "svg"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polygon").count(), 9);
    // every opened element is closed
    let opened = svg.matches('<').count() - svg.matches("</").count();
    let closed = svg.matches("/>").count() + svg.matches("</").count();
    assert_eq!(opened, closed);
}

#[test]
fn csv_formats() {
    let out = run(&["depth", "--dataset", "diamond", "--query", "1,0", "--oracle-grid", "720", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,y,outlyingness,depth,attaining_angle,oracle_outlyingness,oracle_gap");
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    assert!((row[3] - 1.0 / 3.0).abs() < 1e-12);
    assert!(row[6].abs() < 1e-12);
}

#[test]
fn dataset_export() {
    let out = run(&["dataset", "brain", "--raw"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 28);
    assert_eq!(text.lines().next().unwrap(), "1.35,8.1");
}

#[test]
fn contaminated_file_needs_the_relaxed_check() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e2.csv");
    assert!(run(&["simulate", "--scenario", "example2", "--seed", "3", "--output", p.to_str().unwrap()])
        .status
        .success());
    let out = run(&["median", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("--allow-collinear"), "{}", stderr(&out));
}
