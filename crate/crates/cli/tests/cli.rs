use std::path::PathBuf;
use std::process::{Command, Output};

fn nearweight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearweight")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn table_t1_rows() {
    let o = nearweight(&["table", "--preset", "t1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0], "2,1,1;2,2,2;11,11,11;2;0");
    let r222 = rows.iter().find(|r| r.starts_with("2,2,2;")).unwrap();
    let cols: Vec<&str> = r222.split(';').collect();
    assert_eq!((cols[3], cols[4]), ("2", "2"));
    // differences from the published values go to stderr only
    assert!(String::from_utf8_lossy(&o.stderr).contains("note:"));
}

#[test]
fn table_t2_rows() {
    let o = nearweight(&["--preset", "t2", "table"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().any(|r| r == "3,3,3;2,2,2;23,23,23;2;-1"), "{out}");
    assert!(o.stderr.is_empty());
}

#[test]
fn table_markdown() {
    let o = nearweight(&["table", "--preset", "t1", "--format", "markdown"]);
    let out = stdout(&o);
    assert!(out.starts_with("| a |"));
    assert!(out.contains("| (2,2,3) | (4,4,4) | (11,11,11) | 4 | 3 |"), "{out}");
    assert_eq!(out.lines().count(), 12);
}

#[test]
fn output_is_reproducible() {
    let args = ["--seed", "11", "check", "--suite", "axioms", "--n", "200"];
    let a = nearweight(&args);
    let b = nearweight(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let t1 = nearweight(&["table", "--preset", "t1", "--mode", "exact"]);
    let t2 = nearweight(&["table", "--preset", "t1", "--mode", "exact"]);
    assert_eq!(t1.stdout, t2.stdout);
    let c1 = nearweight(&["--a", "2,2,2", "code"]);
    let c2 = nearweight(&["--a", "2,2,2", "code"]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn check_suite_passes() {
    let o = nearweight(&["check", "--suite", "all", "--n", "300"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert!(out.contains("PASS N4"));
    assert!(out.contains("PASS complete-set"));
}

#[test]
fn bound_row() {
    let o = nearweight(&["bound", "--a", "2,2,3"]);
    assert_eq!(stdout(&o), "2,2,3;4,4,4;11,11,11;4;3\n");
    let s = nearweight(&["bound", "--a", "2,2,3", "--path", "search", "--mode", "exact"]);
    assert_eq!(stdout(&s), "2,2,3;4,4,4;11,11,11;4;3\n");
}

#[test]
fn nu_command_lists_chain() {
    let o = nearweight(&["nu", "--a", "2,1,1", "--k", "3"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("2,1,1;3;2"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn rr_prints_dimension_and_basis() {
    let out = stdout(&nearweight(&["rr", "--a", "2,2,2"]));
    assert!(out.starts_with("dim L(2,2,2) = 4\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with('f')).count(), 4);
    assert!(out.contains("/ x^2"));
}

#[test]
fn semigroup_dump() {
    let out = stdout(&nearweight(&["semigroup", "--box", "1,1,1"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "a1,a2,a3,member,minimal");
    assert_eq!(lines.len(), 9);
    assert!(lines.contains(&"1,1,1,1,1"));
    assert!(lines.contains(&"1,0,0,0,0"));
}

#[test]
fn places_and_code() {
    let places = stdout(&nearweight(&["places"]));
    assert_eq!(places.lines().count(), 28);
    assert_eq!(places.lines().filter(|l| l.ends_with(";eval")).count(), 24);
    assert_eq!(places.lines().last(), Some("27;;;inf"));

    let o = nearweight(&["code", "--a", "2,2,3", "--dual-dmax", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.split("\",\"").count() == 24));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("n = 24, k = 5"), "{err}");
    assert!(err.contains("dual distance = 4"), "{err}");

    let sub = stdout(&nearweight(&["code", "--a", "0,0,0", "--eval", "3,4,5"]));
    assert_eq!(sub, "\"1,0\",\"1,0\",\"1,0\"\n");
}

#[test]
fn config_file_and_out_path() {
    let cfg = tmp("q4.cfg", "# GF(16)\nfield.p = 2\nfield.e = 4\ncurve.q = 4\npoints.Q = 0,1,2\noutput.format = csv\n");
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("q4-bound.csv");
    let o = nearweight(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "bound", "--a", "3,3,3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "3,3,3;2,2,2;23,23,23;2;-1\n");
}

#[test]
fn distinct_exit_codes() {
    let bad = tmp("unknown.cfg", "seed = 1\nwidth = 3\n");
    let o = nearweight(&["--config", bad.to_str().unwrap(), "places"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2: unknown key `width`"));

    let inconsistent = tmp("mismatch.cfg", "field.p = 2\nfield.e = 4\ncurve.q = 3\n");
    let o = nearweight(&["--config", inconsistent.to_str().unwrap(), "places"]);
    assert_eq!(o.status.code(), Some(4));

    let preset_clash = tmp("clash.cfg", "curve.q = 3\n");
    let o = nearweight(&["--config", preset_clash.to_str().unwrap(), "table", "--preset", "t2"]);
    assert_eq!(o.status.code(), Some(4));

    let o = nearweight(&["bound", "--a", "5,5,5", "--box", "3,3,3"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("too small"));

    let o = nearweight(&["bound", "--a", "1,1"]);
    assert_eq!(o.status.code(), Some(6));

    let o = nearweight(&["table"]);
    assert_eq!(o.status.code(), Some(2));
}
