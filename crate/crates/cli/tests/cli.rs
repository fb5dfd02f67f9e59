use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pgi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgi"))
        .args(args)
        .env_remove("PGI_MAX_ORDER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    assert!(pgi(&full).status.success());
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generates_exact_tables() {
    let out = pgi(&["gen", "--family", "cyclic", "--p", "2", "--k", "2"]);
    assert_eq!(stdout(&out), "4\n1 2 3 4\n2 3 4 1\n3 4 1 2\n4 1 2 3\n");
    let q8 = pgi(&["gen", "--family", "quaternion"]);
    assert_eq!(stdout(&q8).lines().next(), Some("8"));
    let bad = pgi(&["gen", "--family", "heisenberg", "--p", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn iso_exit_codes_and_witness() {
    let dir = TempDir::new().unwrap();
    let d4 = gen(dir.path(), "d4", &["--family", "dihedral", "--k", "4"]);
    let h2 = gen(dir.path(), "h2", &["--family", "heisenberg", "--p", "2"]);
    let q8 = gen(dir.path(), "q8", &["--family", "quaternion"]);
    for route in ["series", "gen"] {
        let yes = pgi(&["iso", s(&d4), s(&h2), "--route", route, "--witness"]);
        assert_eq!(yes.status.code(), Some(0));
        let text = stdout(&yes);
        assert!(text.starts_with("isomorphic\n"));
        assert_eq!(text.lines().filter(|l| l.contains(" -> ")).count(), 8);
        let no = pgi(&["iso", s(&d4), s(&q8), "--route", route]);
        assert_eq!(no.status.code(), Some(1));
        assert_eq!(stdout(&no), "not isomorphic\n");
    }
}

#[test]
fn canon_is_stable_under_relabel() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "g", &["--family", "direct-product", "--factors", "C2,C4"]);
    let moved = dir.path().join("moved");
    assert!(pgi(&["relabel", s(&g), "--seed", "9", "--out", s(&moved)])
        .status
        .success());
    assert_ne!(fs::read_to_string(&g).unwrap(), fs::read_to_string(&moved).unwrap());
    for route in ["series", "gen"] {
        let a = pgi(&["canon", s(&g), "--route", route]);
        let b = pgi(&["canon", s(&moved), "--route", route]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn series_listing() {
    let dir = TempDir::new().unwrap();
    let v = gen(
        dir.path(),
        "v",
        &["--family", "elementary-abelian", "--p", "2", "--k", "2"],
    );
    assert_eq!(stdout(&pgi(&["series", s(&v), "--count"])), "3\n");
    assert_eq!(
        stdout(&pgi(&["series", s(&v), "--list"])),
        "{1} < {1,2} < G\n{1} < {1,3} < G\n{1} < {1,4} < G\n"
    );
}

#[test]
fn graph_export_and_canonisation() {
    let dir = TempDir::new().unwrap();
    let c2 = gen(dir.path(), "c2", &["--family", "cyclic", "--n", "2"]);
    let x = dir.path().join("x");
    assert!(pgi(&["export-graph", s(&c2), "--series", "1", "--out", s(&x)])
        .status
        .success());
    let text = fs::read_to_string(&x).unwrap();
    assert!(text.starts_with("p cgraph 19 26\n"));
    let hex = stdout(&pgi(&["canon-graph", s(&x)]));
    assert!(hex.starts_with("00000013"));
    assert_eq!(
        pgi(&["export-graph", s(&c2), "--series", "2", "--out", s(&x)])
            .status
            .code(),
        Some(2)
    );

    let series = stdout(&pgi(&["canon-series", s(&c2), "--series", "1"]));
    assert!(series.starts_with("2\n"));
    assert_eq!(series.lines().filter(|l| l.starts_with("level ")).count(), 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad");
    fs::write(&bad, "3\n1 2 3\n2 1 3\n3 3 1\n").unwrap();
    let out = pgi(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let g = gen(dir.path(), "g", &["--family", "cyclic", "--n", "8"]);
    let limited = Command::new(env!("CARGO_BIN_EXE_pgi"))
        .args(["validate", s(&g)])
        .env("PGI_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(2));
    assert_eq!(pgi(&["validate", s(&g)]).status.code(), Some(0));
    assert_eq!(pgi(&["profile", "/definitely/missing"]).status.code(), Some(2));
}

#[test]
fn profile_reports_route() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        dir.path(),
        "g",
        &["--family", "elementary-abelian", "--p", "2", "--k", "4"],
    );
    let text = stdout(&pgi(&["profile", s(&g)]));
    assert!(text.contains("order: 16\n"));
    assert!(text.contains("p-group: yes (exponent 4)\n"));
    assert!(text.contains("route: series\n"));
}
