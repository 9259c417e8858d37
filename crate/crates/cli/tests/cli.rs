use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn primsync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primsync"))
        .args(args)
        .env_remove("PRIMSYNC_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn analyze(name: &str) -> String {
    let path = fixture(name);
    let o = primsync(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn analyze_reports_synchronizing_nonprimitive() {
    let out = analyze("almost_group_5.aut");
    assert!(out.contains("synchronizing: yes (a a b a a a)"), "{out}");
    assert!(
        out.contains("primitive: no (blocks {0}{1}{2}{3,4})"),
        "{out}"
    );
    let out = analyze("nonprimitive_sync_3.aut");
    assert!(out.contains("synchronizing: yes (a b)"), "{out}");
    assert!(out.contains("primitive: no (blocks {0,1}{2})"), "{out}");
}

#[test]
fn analyze_reports_primitive_nonsynchronizing() {
    let out = analyze("primitive_nonsync_5a.aut");
    assert!(out
        .contains("synchronizing: no (incompressible pairs {0,1} {0,2} {0,3} {0,4} {1,3} {2,4})"));
    assert!(out.contains("primitive: yes"));
}

#[test]
fn analyze_reports_pi_graph_for_pu_input() {
    let out = analyze("pu_cycle_3.aut");
    assert!(
        out.contains("letters: a permutation; b unitary (0 -> 1)"),
        "{out}"
    );
    assert!(out.contains("pi: {(0,1),(1,2),(2,0)}"), "{out}");
    assert!(out.contains("synchronizing by pi graph: yes"), "{out}");
}

#[test]
fn shortest_flag_adds_exact_length() {
    let path = fixture("cerny_4.aut");
    let o = primsync(&["analyze", path.to_str().unwrap(), "--shortest", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["synchronizing"]["shortest_reset_length"], 9);
}

#[test]
fn analyze_json_is_complete_and_deterministic() {
    let path = fixture("primitive_nonsync_5b.aut");
    let first = primsync(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&first), 0);
    let again = Command::new(env!("CARGO_BIN_EXE_primsync"))
        .args(["analyze", path.to_str().unwrap(), "--json"])
        .env("PRIMSYNC_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(first.stdout, again.stdout);

    let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["synchronizing"]["synchronizing"], false);
    assert_eq!(v["primitivity"]["primitive"], true);
    assert_eq!(v["connectivity"]["kind"], "StronglyConnected");
    for key in [
        "letter_split",
        "circular",
        "monoid",
        "pu",
        "psc",
        "pi",
        "psc_verdict",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["pi"].is_null());
    assert_eq!(v["psc_verdict"]["applies"], false);
}

#[test]
fn analyze_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_primsync"))
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1 1\n0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("synchronizing: yes"));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.aut");
    std::fs::write(&empty, "").unwrap();
    let o = primsync(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let bad = dir.path().join("bad.aut");
    std::fs::write(&bad, "3 1\n0 1 7\n").unwrap();
    let o = primsync(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(code(&primsync(&["analyze", "/nonexistent/file.aut"])), 1);
    assert_eq!(code(&primsync(&["frobnicate"])), 1);
    assert_eq!(code(&primsync(&["verify", "--states", "3"])), 1);
    assert_eq!(code(&primsync(&["--help"])), 0);
    assert_eq!(code(&primsync(&["--version"])), 0);
}

#[test]
fn verify_within_the_checked_range_exits_zero() {
    let o = primsync(&[
        "verify",
        "--states",
        "4",
        "--letters",
        "2",
        "--variant",
        "strong",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("counterexamples: 0"));
    let o = primsync(&[
        "verify",
        "--states",
        "5",
        "--letters",
        "2",
        "--variant",
        "weak",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("counterexamples: 0"));
}

#[test]
fn verify_with_relaxed_letters_exits_three() {
    let o = primsync(&[
        "verify",
        "--states",
        "5",
        "--letters",
        "2",
        "--variant",
        "relaxed",
        "--deficiency",
        "2",
        "--max-cycle",
        "3",
        "--dedup",
        "--json",
    ]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool"]["name"], "primsync");
    let r = &v["report"];
    assert_eq!(r["variant"]["kind"], "relaxed");
    assert_eq!(r["variant"]["allowed_deficiency"], 2);
    assert_eq!(r["variant"]["max_cycle"], 3);
    assert_eq!(r["counterexample_count"], 12);
    assert!(!r["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn verify_json_does_not_depend_on_jobs() {
    let run = |jobs: &str| {
        let o = primsync(&[
            "verify",
            "--states",
            "4",
            "--letters",
            "3",
            "--variant",
            "strong",
            "--dedup",
            "--json",
            "--jobs",
            jobs,
        ]);
        assert_eq!(code(&o), 0);
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["report"]["elapsed"] = Value::Null;
        v
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn verify_over_budget_exits_two() {
    let o = primsync(&[
        "verify",
        "--states",
        "5",
        "--letters",
        "3",
        "--variant",
        "weak",
        "--budget",
        "1000",
    ]);
    assert_eq!(code(&o), 2);
    let o = primsync(&[
        "verify",
        "--states",
        "8",
        "--letters",
        "2",
        "--variant",
        "weak",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn search_exit_codes() {
    let o = primsync(&[
        "search",
        "--states",
        "5",
        "--letters",
        "2",
        "--variant",
        "relaxed",
        "--budget",
        "200000",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("counterexample found"));
    let o = primsync(&[
        "search",
        "--states",
        "5",
        "--letters",
        "2",
        "--variant",
        "weak",
        "--budget",
        "2000",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn export_letters_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.dot");
    let path = fixture("nonprimitive_sync_3.aut");
    let o = primsync(&[
        "export-dot",
        path.to_str().unwrap(),
        "--graph",
        "letters",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let dot = std::fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("digraph"));
    for node in ["  0;", "  1;", "  2;"] {
        assert!(dot.contains(node));
    }
    assert!(dot.contains("0 -> 1 [label=\"a\"]"));
    assert!(dot.contains("2 -> 1 [label=\"a,b\"]"));
}

#[test]
fn export_rystsov_graph() {
    let path = fixture("pu_cycle_3.aut");
    let o = primsync(&["export-dot", path.to_str().unwrap(), "--graph", "rystsov"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("->").count(), 3);
    let path = fixture("primitive_nonsync_5a.aut");
    let o = primsync(&["export-dot", path.to_str().unwrap(), "--graph", "rystsov"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn export_pair_graph_and_single_state() {
    let path = fixture("nonprimitive_sync_3.aut");
    let o = primsync(&["export-dot", path.to_str().unwrap(), "--graph", "pair"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"{0,2}\" -> merged"));

    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("one.aut");
    std::fs::write(&single, "1 2\n0\n0\n").unwrap();
    let o = primsync(&["export-dot", single.to_str().unwrap(), "--graph", "letters"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("->").count(), 1);
    assert!(dot.contains("0 -> 0 [label=\"a,b\"]"));
}
