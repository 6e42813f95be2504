use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spanner-lab"));
    cmd.env_remove("SPANNER_LAB_SEED");
    cmd
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

#[test]
fn greedy_then_verify_then_enlarge() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let out = run(p, &["gen", "random", "--model", "chords:12", "--n", "24", "--seed", "3", "--out", "g.edges"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(p, &["greedy", "--input", "g.edges", "--k", "5", "--order", "random:9", "--out", "h.edges"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = run(p, &["verify", "--input", "g.edges", "--spanner", "h.edges", "--k", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["spanner"], true);
    assert!(v["girth"].is_null() || v["girth"].as_u64().unwrap() >= 7);

    // Greedy output is already a fixed point.
    let out = run(p, &["enlarge", "--input", "g.edges", "--spanner", "h.edges", "--k", "5", "--trace", "t.json", "--out", "r.edges"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let trace: serde_json::Value = serde_json::from_str(&fs::read_to_string(p.join("t.json")).unwrap()).unwrap();
    assert_eq!(trace["iterations"].as_array().unwrap().len(), 0);
    assert_eq!(trace["totals"]["bound_ok"], true);
    assert_eq!(fs::read_to_string(p.join("r.edges")).unwrap().lines().skip(1).collect::<Vec<_>>(),
               fs::read_to_string(p.join("h.edges")).unwrap().lines().skip(1).collect::<Vec<_>>());
}

#[test]
fn enlarge_breaks_short_cycles_and_writes_the_trace_schema() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    fs::write(p.join("g.edges"), "10 11\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n8 9\n0 9\n0 2\n").unwrap();
    let out = run(p, &["enlarge", "--input", "g.edges", "--spanner", "g.edges", "--k", "9", "--trace", "t.json", "--out", "r.edges"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let trace: serde_json::Value = serde_json::from_str(&fs::read_to_string(p.join("t.json")).unwrap()).unwrap();
    let iters = trace["iterations"].as_array().unwrap();
    assert_eq!(iters.len(), 2);
    for it in iters {
        for key in ["girth_before", "branch", "removed", "added", "endangered", "verified"] {
            assert!(it.get(key).is_some(), "missing {key}");
        }
        assert_eq!(it["removed"].as_array().unwrap().len(), 2);
    }
    for key in ["in_edges", "out_edges", "bound_rhs", "bound_ok"] {
        assert!(trace["totals"].get(key).is_some(), "missing {key}");
    }
    let out = run(p, &["verify", "--input", "g.edges", "--spanner", "r.edges", "--k", "9"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["girth"].is_null());
}

#[test]
fn failed_verification_exits_with_three() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    fs::write(p.join("g.edges"), "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    fs::write(p.join("h.edges"), "5 4\n0 1\n1 2\n2 3\n3 4\n").unwrap();
    let out = run(p, &["verify", "--input", "g.edges", "--spanner", "h.edges", "--k", "3"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["spanner"], false);
    let out = run(p, &["enlarge", "--input", "g.edges", "--spanner", "h.edges", "--k", "3", "--trace", "t.json"]);
    assert_eq!(code(&out), 3);
    assert!(!p.join("t.json").exists());
}

#[test]
fn input_errors_exit_with_two() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    fs::write(p.join("bad.edges"), "3 2\n0 1\n1 1\n").unwrap();
    let out = run(p, &["greedy", "--input", "bad.edges", "--k", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert_eq!(code(&run(p, &["greedy", "--input", "missing.edges", "--k", "2"])), 2);
    assert_eq!(code(&run(p, &["bench", "--suite", "nope"])), 2);
    assert_eq!(code(&run(p, &["enlarge", "--regime", "bucket:9"])), 2);

    fs::write(p.join("g.edges"), "3 3\n0 1\n1 2\n0 2\n").unwrap();
    fs::write(p.join("order.txt"), "0 1\n1 2\n").unwrap();
    let out = run(p, &["greedy", "--input", "g.edges", "--k", "1", "--order", "order.txt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ordering_files_drive_greedy() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    fs::write(p.join("g.edges"), "5 6\n0 1\n1 2\n2 3\n3 4\n0 4\n0 2\n").unwrap();
    fs::write(p.join("h.edges"), "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = run(p, &["reconstruct", "--input", "g.edges", "--spanner", "h.edges", "--k", "3", "--out", "order.txt"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(p, &["greedy", "--input", "g.edges", "--k", "3", "--order", "order.txt"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let edges: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(edges, ["0 1", "0 4", "1 2", "2 3", "3 4"]);
    // The pentagon with its chord cannot come from greedy at k = 3.
    let out = run(p, &["reconstruct", "--input", "g.edges", "--spanner", "g.edges", "--k", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn lemma_violations_exit_with_four_and_ship_the_instance() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let out = run(p, &[
        "gen", "hanging", "--n", "40", "--k", "4", "--cycle", "4", "--paths", "3", "--density", "0.6",
        "--seed", "0", "--out", "g.edges", "--spanner", "h.edges",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(p, &[
        "enlarge", "--input", "g.edges", "--spanner", "h.edges", "--k", "4", "--regime", "extreme",
        "--trace", "t.json", "--violation-dir", "failed",
    ]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("t.json"));
    assert!(p.join("t.json").exists());
    for f in ["base.edges", "spanner.edges", "violation.json"] {
        assert!(p.join("failed").join(f).exists(), "{f}");
    }
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(p.join("failed/violation.json")).unwrap()).unwrap();
    assert_eq!(v["kind"], "extreme");
    // The shipped instance is a valid input that fails the same way.
    let out = run(p, &[
        "enlarge", "--input", "failed/base.edges", "--spanner", "failed/spanner.edges", "--k", "4",
        "--regime", "extreme", "--trace", "t2.json",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn gadget_generation_and_check() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let out = run(p, &["gen", "gadget", "--k", "36", "--n", "160", "--out", "g.edges", "--baseline", "h.edges", "--check"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rep = json(&out);
    assert_eq!(rep["checked"], 36 * 2 * 21);
    assert_eq!(rep["violations"].as_array().unwrap().len(), 0);
    let out = run(p, &["verify", "--input", "g.edges", "--spanner", "h.edges", "--k", "36"]);
    assert_eq!(json(&out)["girth"], 36);
    assert_eq!(code(&run(p, &["gen", "gadget", "--k", "30", "--n", "200", "--out", "x.edges"])), 2);
}

#[test]
fn oracle_commands() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    fs::write(p.join("c5.edges"), "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = run(p, &["oracle", "min-spanner", "--input", "c5.edges", "--k", "4", "--all"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["opt_size"], 4);
    assert_eq!(v["witness_count"], 5);
    let out = run(p, &["oracle", "classify", "--n", "5", "--k", "4"]);
    assert_eq!(code(&out), 0);
    assert_ne!(json(&out)["class"], "not_good");
    assert_eq!(code(&run(p, &["oracle", "classify", "--n", "9", "--k", "4"])), 2);
    let out = run(p, &["oracle", "greedy-min", "--input", "c5.edges", "--k", "3"]);
    assert_eq!(json(&out)["size"], 5);
}

#[test]
fn bench_reports_are_reproducible() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let a = run(p, &["bench", "--suite", "regimes", "--seed", "7", "--trials", "2"]);
    let b = run(p, &["bench", "--suite", "regimes", "--seed", "7", "--trials", "2"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let c = bin().current_dir(p).env("SPANNER_LAB_SEED", "7").args(["bench", "--suite", "regimes", "--trials", "2"]).output().unwrap();
    assert_eq!(a.stdout, c.stdout);
    let rows: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(rows.len(), 1 + 5 * 3 * 2);
    assert!(rows[0].starts_with("suite,trial,seed,model,derivation,n,m,k,regime,in_edges,out_edges,bound_rhs,bound_ok,iterations"));

    let empty = run(p, &["bench", "--suite", "gadget", "--trials", "0"]);
    assert_eq!(stdout(&empty).lines().count(), 1);
    let out = run(p, &["bench", "--suite", "gadget", "--trials", "3", "--format", "json", "--out", "g.json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(p.join("g.json")).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v.as_array().unwrap().iter().all(|r| r["violations"] == 0));
}
