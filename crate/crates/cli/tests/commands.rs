use std::path::Path;
use std::process::{Command, Output};

fn ribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn emit(dir: &Path, name: &str, n: Option<&str>) -> String {
    let path = dir.join(format!("{name}.rg"));
    let path_s = path.to_str().unwrap().to_string();
    let mut args = vec!["catalog", "--name", name, "--emit", &path_s];
    if let Some(n) = n {
        args.extend(["--n", n]);
    }
    let out = ribbon(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path_s
}

#[test]
fn star_polynomial_of_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = emit(dir.path(), "K3", None);
    let out = ribbon(&["compute", "--poly", "star", &k3]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("2 + 6*z^2"));
    assert!(text.contains("support: {0, 2}"));
    assert!(text.contains("even-interpolating: yes"));
    assert!(text.contains("parity: even"));
}

#[test]
fn restricted_polynomial_of_odd_dipole() {
    let dir = tempfile::tempdir().unwrap();
    let d5 = emit(dir.path(), "dipole", Some("5"));
    let out = ribbon(&["compute", "--poly", "petrial-orientable", &d5]);
    assert_eq!(stdout(&out).lines().next(), Some("1 + 1*z^4"));
    assert!(stdout(&out).contains("even-interpolating: no"));
}

#[test]
fn output_is_independent_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    let g = emit(dir.path(), "twisted-bowtie-family", Some("9"));
    for poly in ["star", "petrial", "petrial-orientable", "word:*x*"] {
        let base = stdout(&ribbon(&["--threads", "1", "compute", "--poly", poly, &g]));
        for k in ["2", "5"] {
            assert_eq!(stdout(&ribbon(&["--threads", k, "compute", "--poly", poly, &g])), base, "{poly}");
        }
    }
}

#[test]
fn word_polynomials_match_named_ones() {
    let dir = tempfile::tempdir().unwrap();
    let g = emit(dir.path(), "diamond", None);
    let first = |poly: &str| stdout(&ribbon(&["compute", "--poly", poly, &g])).lines().next().unwrap().to_string();
    assert_eq!(first("word:*"), first("star"));
    assert_eq!(first("word:x"), first("petrial"));
}

#[test]
fn catalog_prints_and_lists() {
    let out = ribbon(&["catalog", "--name", "K2"]);
    assert_eq!(stdout(&out), "edges a\nvertex u: a.0\nvertex v: a.1\n");
    let list = stdout(&ribbon(&["catalog"]));
    assert!(list.lines().any(|l| l.starts_with("dipole --n N")));
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rg");
    std::fs::write(&bad, "vertex u: a.0 a.0\n").unwrap();
    let out = ribbon(&["compute", "--poly", "star", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 15"));

    assert_eq!(ribbon(&["catalog", "--name", "petersen"]).status.code(), Some(3));

    let d5 = emit(dir.path(), "dipole", Some("5"));
    let out = ribbon(&["bound", "--file", &d5, "--edge", "nope"]);
    assert_eq!(out.status.code(), Some(3));

    let out = ribbon(&["--max-bits", "2", "compute", "--poly", "petrial", &d5]);
    assert_eq!(out.status.code(), Some(5));
    assert!(out.stdout.is_empty());
}

#[test]
fn verify_reports_records_and_summary() {
    let out = ribbon(&["verify", "--identity", "eq3", "--trials", "4", "--seed", "9", "--max-edges", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("eq3\t9\t")).count(), 4);
    assert!(text.contains("# eq3: 4 pass, 0 flagged, 0 failed of 4"));

    let out = ribbon(&["verify", "--identity", "eq2", "--trials", "30", "--seed", "2", "--quiet"]);
    assert!(out.status.success(), "eq2 mismatches are flagged, not failures");

    assert_eq!(ribbon(&["verify", "--identity", "eq99", "--trials", "1"]).status.code(), Some(3));
}

#[test]
fn bound_on_diamond() {
    let dir = tempfile::tempdir().unwrap();
    let g = emit(dir.path(), "diamond", None);
    let out = ribbon(&["bound", "--file", &g, "--edge", "e", "--search", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("face stats: f0_max = 3, f1_min = 1"));
    assert!(text.contains("threshold: 5"));
    assert!(text.contains("smallest n not even-interpolating: 5"));
}

#[test]
fn reproduce_single_criterion_table() {
    let out = ribbon(&["reproduce", "--criterion", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 of 1 criteria passed"));
}
