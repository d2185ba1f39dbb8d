use std::path::PathBuf;
use std::process::{Command, Output};

use fper::cli::ObjectFile;
use serde_json::Value;

fn fper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fper")).args(args).output().expect("binary runs")
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fper-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const OBJECTS: &str = "\
ring Z
split one = [0,1]
complex cb
  degree -1 [0,1]
  degree 0 [1,1]
  d -1 [1,0,0,0,1]
end
complex c2b
  degree -1 [0,1]
  degree 0 [1,1]
  d -1 [1,0,0,0,2]
end
complex big
  degree -1 [0,1] [1,1]
  degree 0 [1,2]
  d -1 [1,0,0,0,1] [1,0,1,0,1] [1,1,1,0,1]
end
";

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn analyze_cone_two_beta() {
    let f = write("analyze.fper", OBJECTS);
    let o = fper(&["analyze", f.to_str().unwrap(), "c2b"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["supp_pi"], serde_json::json!([2]));
    assert_eq!(v["supp_gr"], "All");
}

#[test]
fn member_and_non_member() {
    let f = write("member.fper", OBJECTS);
    let o = fper(&["member", f.to_str().unwrap(), "one", "cb", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "non-member");
    assert!(v["separating_prime"].is_string());
    let o = fper(&["member", f.to_str().unwrap(), "big", "cb"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "member");
}

#[test]
fn central_ring_table() {
    let o = fper(&["central-ring", "--ring", "Z", "--from", "-2", "--to", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let ranks: Vec<&str> = text.lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(ranks, ["0", "0", "1", "1", "1", "1"]);
}

#[test]
fn spectrum_dot() {
    let o = fper(&["spectrum", "--ring", "Z", "--primes-up-to", "5", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    let nodes = text.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count();
    assert_eq!(nodes, 8);
}

#[test]
fn minimize_and_decompose_emit_object_files() {
    let f = write("min.fper", OBJECTS);
    let o = fper(&["minimize", f.to_str().unwrap(), "big"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = ObjectFile::parse(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(parsed.complex("big").unwrap().total_rank(), 2);

    let q = write("dec.fper", &OBJECTS.replace("ring Z", "ring Q"));
    let o = fper(&["decompose", q.to_str().unwrap(), "big"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = ObjectFile::parse(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(parsed.get("big_0").is_some() && parsed.get("big_sum").is_some());

    // decomposition needs a field
    let o = fper(&["decompose", f.to_str().unwrap(), "big"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports_each_check() {
    let o = fper(&["verify", "--suite", "all", "--seed", "42", "--cases", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() >= 15);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn input_errors_exit_with_two() {
    let bad = write("bad.fper", "ring Z\ncomplex x\n  degree 0 [0,1]\n  degree 1 [-1,1]\n  d 0 [-1,0,0,0,1]\nend\n");
    let o = fper(&["analyze", bad.to_str().unwrap(), "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 5"));
    assert_eq!(fper(&["analyze", "/nonexistent/file", "x"]).status.code(), Some(2));
    assert_eq!(fper(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let f = write("missing.fper", OBJECTS);
    assert_eq!(fper(&["analyze", f.to_str().unwrap(), "nothing"]).status.code(), Some(2));
}
