use std::fs;
use std::process::{Command, Output};

fn kpres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_text_header() {
    let o = kpres(&["generate", "-r", "4", "--variant", "thm1.1", "--format", "text"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("K_4"));
    assert!(s.contains("generators 15 :"));
    assert!(s.contains("R2-ST(k=4): "));
}

#[test]
fn generate_gap_shape() {
    let s = stdout(&kpres(&["generate", "-r", "3", "--variant", "thm4.1", "--format", "gap"]));
    assert!(s.contains("F := FreeGroup("));
    assert!(s.contains("G := F / rels;"));
    let m = stdout(&kpres(&["generate", "-r", "3", "--variant", "thm4.1", "--format", "magma"]));
    assert!(m.contains("quo<F | rels>"));
}

#[test]
fn rank_mismatch_is_a_usage_error() {
    let o = kpres(&["generate", "-r", "2", "--variant", "thm1.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not defined at rank 2"));
    assert_eq!(kpres(&["generate", "-r", "4", "--variant", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let o = kpres(&["verify", "-r", "3", "--variant", "thm4.1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict PASS"));
    let o = kpres(&["verify", "-r", "5", "--variant", "thm1.1", "--no-corpus"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("b1 = 18"));
}

#[test]
fn verify_reports_mutants() {
    let s = stdout(&kpres(&["verify", "-r", "4", "--variant", "thm1.1", "--mutate", "100", "--no-corpus"]));
    let line = s.lines().find(|l| l.starts_with("mutation ")).unwrap();
    let caught: usize = line.split_whitespace().nth(1).unwrap().split('/').next().unwrap().parse().unwrap();
    assert!(caught >= 90, "{line}");
}

#[test]
fn betti_line() {
    assert_eq!(stdout(&kpres(&["betti", "-r", "6", "--variant", "thm1.1"])), "22\n");
}

#[test]
fn check_identity_verdicts() {
    let o = kpres(&["check-identity", "--r", "3", "--lhs", "d", "--rhs", "b[1,1] b[2,1] b[1,1]' b[2,1]'"]);
    assert_eq!(stdout(&o), "EQUAL\n");
    assert_eq!(o.status.code(), Some(0));
    let o = kpres(&["check-identity", "--r", "3", "--lhs", "a[1,1]", "--rhs", "a[2,1]"]);
    assert_eq!(stdout(&o), "NOT-EQUAL\n");
    assert_eq!(o.status.code(), Some(1));
    let o = kpres(&["check-identity", "-r", "3", "--lhs", "a[1,1] q[2]", "--rhs", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at byte"));
}

#[test]
fn json_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let a_s = a.to_str().unwrap();
    assert!(kpres(&["generate", "-r", "4", "--variant", "thm1.1", "--format", "json", "-o", a_s]).status.success());
    assert!(kpres(&["export", "--input", a_s, "--format", "json", "-o", b.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let gap = stdout(&kpres(&["export", "--input", a_s, "--format", "gap"]));
    assert_eq!(gap, stdout(&kpres(&["generate", "-r", "4", "--variant", "thm1.1", "--format", "gap"])));
}

#[test]
fn output_independent_of_jobs() {
    for fmt in ["text", "json", "gap", "magma"] {
        let one = kpres(&["generate", "-r", "5", "--variant", "thm4.1", "--format", fmt, "--jobs", "1"]);
        let many = kpres(&["generate", "-r", "5", "--variant", "thm4.1", "--format", fmt, "--jobs", "4"]);
        assert_eq!(one.stdout, many.stdout, "{fmt}");
    }
    let one = kpres(&["verify", "-r", "4", "--variant", "thm1.1", "--format", "json", "--jobs", "1", "--no-corpus"]);
    let many = kpres(&["verify", "-r", "4", "--variant", "thm1.1", "--format", "json", "--jobs", "3", "--no-corpus"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn replay_and_script_file() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("script.json");
    let o = kpres(&["replay-tietze", "-r", "4", "--emit-script", script.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("missing relators: 0; extra relators: 0"));
    let o = kpres(&["replay-tietze", "--script", script.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("verdict PASS\n"));
}
