use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dynhull_cli::{Row, CSV_HEADER};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tempfile::TempDir;

fn dynhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynhull")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = dynhull(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read_rows(p: &Path) -> Vec<Row> {
    let mut r = csv::Reader::from_path(p).unwrap();
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>().join(","), CSV_HEADER);
    r.deserialize().map(|row| row.unwrap()).collect()
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.pts"), path(&dir, "b.pts"));
    for out in [&a, &b] {
        ok(&["generate", "--dist", "uniform", "--n", "1024", "--seed", "7", "--out", out]);
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    assert_eq!(text.iter().filter(|&&c| c == b'\n').count(), 1024);

    let e = path(&dir, "e.pts");
    ok(&["generate", "--dist", "disk", "--n", "0", "--out", &e]);
    assert!(fs::read(&e).unwrap().is_empty());
}

#[test]
fn generate_rejects_unknown_distribution() {
    let dir = TempDir::new().unwrap();
    let out = dynhull(&["generate", "--dist", "square", "--n", "4", "--out", &path(&dir, "x.pts")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_rows_parse_back() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "uniform.pts");
    let csv_path = dir.path().join("rows.csv");
    let csv = csv_path.to_str().unwrap();
    ok(&["generate", "--n", "2048", "--seed", "3", "--out", &pts]);
    for (mode, structure) in [("construct", "ovl"), ("extend", "eilice"), ("query", "rank-ovl"), ("construct", "static-oracle")] {
        ok(&["bench", "--mode", mode, "--structure", structure, "--kernel", "inexact", "--input", &pts, "--scale", "64", "--out", csv]);
    }
    let rows = read_rows(&csv_path);
    assert!(rows.iter().all(|r| r.dist == "uniform" && r.kernel == "inexact"));
    let construct: Vec<_> = rows.iter().filter(|r| r.mode == "construct" && r.structure == "ovl").collect();
    assert_eq!(construct.len(), 8);
    assert_eq!(construct.last().unwrap().n, 2048);
    assert!(rows.iter().any(|r| r.structure == "static-oracle" && r.ops_counter == 0));

    // Writing the parsed rows again reproduces the file.
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).unwrap();
    }
    assert_eq!(String::from_utf8(w.into_inner().unwrap()).unwrap(), fs::read_to_string(&csv_path).unwrap());
}

#[test]
fn update_iterations_are_polylogarithmic() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "u.pts");
    let csv_path = dir.path().join("update.csv");
    ok(&["generate", "--n", "8192", "--seed", "11", "--out", &pts]);
    ok(&[
        "bench", "--mode", "update", "--structure", "eilice", "--kernel", "exact", "--input", &pts, "--batch", "200",
        "--out", csv_path.to_str().unwrap(),
    ]);
    let rows = read_rows(&csv_path);
    assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![256, 512, 1024, 2048, 4096, 8092]);
    for r in rows {
        let log = (r.n as f64).log2();
        let per_update = r.ops_counter as f64 / r.batch as f64;
        assert!(per_update <= 4.0 * log * log, "n = {}: {per_update} iterations per update", r.n);
    }
}

#[test]
fn query_audit_runs_for_every_structure() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "c.pts");
    ok(&["generate", "--dist", "circle", "--n", "1024", "--out", &pts]);
    for s in ["ovl", "eilice", "rank-ovl", "rank-eilice", "static-oracle"] {
        let out = ok(&["bench", "--mode", "query", "--structure", s, "--input", &pts, "--batch", "2000"]);
        assert_eq!(out.lines().count(), 4, "{out}");
    }
}

#[test]
fn bench_without_room_fails() {
    let dir = TempDir::new().unwrap();
    let pts = path(&dir, "few.pts");
    ok(&["generate", "--n", "10", "--out", &pts]);
    let out = dynhull(&["bench", "--mode", "extend", "--structure", "ovl", "--input", &pts, "--batch", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

fn random_script(seed: u64, ops: usize) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut present: Vec<(i32, i32)> = Vec::new();
    let mut lines = Vec::new();
    while lines.len() < ops {
        let roll = rng.random_range(0..10);
        if roll < 2 && !present.is_empty() {
            let (x, y) = present.swap_remove(rng.random_range(0..present.len()));
            lines.push(format!("del {x} {y}"));
        } else if roll < 4 {
            lines.push(format!("q {} {}", rng.random_range(-40..=40) as f64 / 4.0, rng.random_range(-40..=40) as f64 / 4.0));
        } else {
            // A small grid, so collinear and equal-x points are common.
            let p = (rng.random_range(-10..=10), rng.random_range(-10..=10));
            if !present.contains(&p) {
                present.push(p);
                lines.push(format!("ins {} {}", p.0, p.1));
            }
        }
    }
    lines.join("\n") + "\n"
}

#[test]
fn random_script_passes() {
    let dir = TempDir::new().unwrap();
    let script = path(&dir, "ops.txt");
    fs::write(&script, random_script(5, 512)).unwrap();
    for s in ["eilice", "ovl", "static-oracle"] {
        let out = ok(&["verify", "--structure", s, "--kernel", "exact", "--script", &script]);
        assert_eq!(out.trim(), "PASS: 512 ops agree with the oracle");
    }
}

#[test]
fn verify_reports_first_bad_op() {
    let dir = TempDir::new().unwrap();
    let script = path(&dir, "bad.txt");
    fs::write(&script, "ins 0 0\n# comment\ndel 1 1\nins 2 2\n").unwrap();
    let out = dynhull(&["verify", "--structure", "eilice", "--script", &script]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("FAIL at op 2 (line 3, `del 1 1`)"), "{text}");
    assert!(text.contains("not present"), "{text}");
}

#[test]
fn verify_empty_script_and_initial_points() {
    let dir = TempDir::new().unwrap();
    let script = path(&dir, "empty.txt");
    fs::write(&script, "").unwrap();
    assert_eq!(ok(&["verify", "--structure", "ovl", "--script", &script]).trim(), "PASS: 0 ops agree with the oracle");

    let pts = path(&dir, "init.pts");
    ok(&["generate", "--dist", "bell", "--n", "200", "--seed", "2", "--out", &pts]);
    let first = fs::read_to_string(&pts).unwrap().lines().next().unwrap().to_string();
    fs::write(&script, format!("del {first}\nq 0 0\nins {first}\n")).unwrap();
    for kernel in ["exact", "inexact"] {
        let out = ok(&["verify", "--structure", "eilice", "--kernel", kernel, "--input", &pts, "--script", &script]);
        assert!(out.starts_with("PASS"), "{out}");
    }
}

#[test]
fn verify_rejects_malformed_script() {
    let dir = TempDir::new().unwrap();
    let script = path(&dir, "bad.txt");
    fs::write(&script, "ins 0 0\nins 1\n").unwrap();
    let out = dynhull(&["verify", "--structure", "ovl", "--script", &script]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("script line 2"));
}
