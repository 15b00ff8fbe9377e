use std::path::Path;
use std::process::{Command, Output};

fn grooming(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grooming")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gamma_table_csv_is_ten_by_fifteen() {
    let o = grooming(&["gamma-table", "--c", "1..10", "--p", "2..16", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[0], "C,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,rho");
    assert_eq!(lines[3], "3,1,3,6,10,12,14,16,18,20,22,24,26,28,30,32,2");
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 17));
}

#[test]
fn construct_c3_n13_is_optimal_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sol.json");
    let o = grooming(&["construct", "--c", "3", "--n", "13", "--out", file.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["adm"], 39);
    assert_eq!(doc["certificate"], "optimal");
    let v = grooming(&["validate", file.to_str().unwrap()]);
    assert!(v.status.success(), "{}", stderr(&v));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["construct", "--c", "2", "--n", "14"][..],
        &["solve", "--c", "2", "--n", "6"][..],
        &["bound", "--c", "4", "--n", "30", "--format", "json"][..],
        &["compare", "--c", "1..6", "--n", "20", "--format", "csv"][..],
        &["designs", "bibd", "--v", "16", "--k", "4"][..],
    ] {
        let a = grooming(args);
        let b = grooming(args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn double_cover_file(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("bad.json");
    let text = r#"{
  "n": 3, "c": 1, "half_arc_rule": "all-forward",
  "blocks": [
    { "vertices": [0, 1, 2], "arcs": [[0, 1], [1, 2], [2, 0]] },
    { "vertices": [0, 1], "arcs": [[0, 1]] }
  ],
  "adm": 5, "provenance": "external"
}"#;
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn validate_names_a_double_covered_arc() {
    let dir = tempfile::tempdir().unwrap();
    let o = grooming(&["validate", double_cover_file(dir.path()).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("arc (0, 1) is covered by blocks"), "{}", stderr(&o));
}

#[test]
fn distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"n\": 3}").unwrap();
    assert_eq!(grooming(&["validate", garbage.to_str().unwrap()]).status.code(), Some(5));
    assert_eq!(grooming(&["designs", "gdd3", "--type", "2^5"]).status.code(), Some(3));
    assert_eq!(grooming(&["designs", "exists", "--type", "3^2 1^1"]).status.code(), Some(3));
    assert_eq!(grooming(&["solve", "--c", "2", "--n", "9", "--node-budget", "10"]).status.code(), Some(4));
    assert_eq!(grooming(&["bound", "--c", "0", "--n", "9"]).status.code(), Some(2));
    assert_eq!(grooming(&["construct", "--c", "2", "--n", "9", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn solve_over_orientations_reports_the_rule() {
    let o = grooming(&["solve", "--c", "3", "--n", "6", "--optimize-orientation"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["status"], "proved-optimal");
    assert_eq!(doc["half_arc_rule"], "explicit");
    assert_eq!(doc["orientation"].as_array().unwrap().len(), 3);
    let adm = doc["adm"].as_u64().unwrap();
    assert!((9..=10).contains(&adm));
}

#[test]
fn designs_generate_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let o = grooming(&["designs", "sts", "--v", "13"]);
    assert!(o.status.success());
    let file = dir.path().join("sts.json");
    std::fs::write(&file, &o.stdout).unwrap();
    let v = grooming(&["designs", "validate", file.to_str().unwrap()]);
    assert!(v.status.success(), "{}", stderr(&v));
    assert!(stdout(&v).contains("26 blocks"));
}
