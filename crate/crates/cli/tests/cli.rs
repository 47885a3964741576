use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_fusionring");
const F21: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/f21.chartab");

fn run(args: &[&str], stdin: Option<&[u8]>, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .stdin(if stdin.is_some() {
            Stdio::piped()
        } else {
            Stdio::null()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    if let Some(t) = threads {
        cmd.env("FUSIONRING_THREADS", t);
    }
    let mut child = cmd.spawn().unwrap();
    if let Some(data) = stdin {
        child.stdin.take().unwrap().write_all(data).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn gen(args: &[&str]) -> Vec<u8> {
    let out = run(args, None, None);
    assert_eq!(out.status.code(), Some(0));
    out.stdout
}

fn text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn fragment_subrings_report_the_violation() {
    let spec = gen(&["gen", "fragment"]);
    let out = run(&["subrings", "/dev/stdin"], Some(&spec), None);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        text(&out).contains("freeness violation: (30, 75)"),
        "{}",
        text(&out)
    );

    let out = run(&["--format", "json", "subrings", "-"], Some(&spec), None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["violations"].as_array().unwrap().len(), 1);
    assert_eq!(v["violations"][0]["inner_dimension"], 30);
    assert_eq!(v["violations"][0]["outer_dimension"], 75);
}

#[test]
fn so3_verdict_is_conclusion_ii_to_depth_nine() {
    let spec = gen(&["gen", "so3", "21"]);
    let out = run(&["verdict", "/dev/stdin"], Some(&spec), None);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out).contains("certified to depth 9"));
    let out = run(&["verdict", "--format", "json", "-"], Some(&spec), None);
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "conclusion_ii");
    assert_eq!(v["result"]["certificate"]["depth_reached"], 9);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["check", "missing.ring"], None, None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("missing.ring"));
}

#[test]
fn usage_errors_name_the_flag() {
    for (args, flag) in [
        (&["search"][..], "--degrees"),
        (&["--format", "xml", "gen", "fragment"], "--format"),
        (&["ladder", "x.ring"], "--x3"),
    ] {
        let out = run(args, None, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(flag), "{err}");
    }
    let out = run(&["search", "--degrees", "1,2"], None, None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_positions() {
    let out = run(&["check", "-"], Some(b"ring r\nbasis 1 x 1\n"), None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:9") || err.contains("line 2"), "{err}");
}

#[test]
fn check_flags_a_broken_duality() {
    // a squares to b, so a cannot be self-dual
    let spec = b"ring bad\nbasis 1 1 1\nbasis a 1 a\nbasis b 1 b\nunit 1\n\
prod a a : b 1\nprod a b : 1 1\nprod b a : 1 1\nprod b b : a 1\n";
    let out = run(&["check", "-"], Some(spec), None);
    assert_eq!(out.status.code(), Some(1), "{}", text(&out));
    assert!(text(&out).contains("FAIL duality_pairing"));
    let out = run(&["--format", "json", "check", "-"], Some(spec), None);
    assert_eq!(json(&out)["ok"], false);

    let z5 = gen(&["gen", "cyclic", "5"]);
    let out = run(&["check", "-"], Some(&z5), None);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn chartable_ring_gives_conclusion_i_with_divisibility() {
    let spec = gen(&["gen", "chartable", F21]);
    let out = run(&["verdict", "-"], Some(&spec), None);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        text(&out).contains("21 is divisible by 3"),
        "{}",
        text(&out)
    );
}

#[test]
fn ladder_subcommand() {
    let spec = gen(&["gen", "so3", "15"]);
    let out = run(
        &["ladder", "-", "--x3", "x3", "--depth", "3"],
        Some(&spec),
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out).contains("x7 x3 = x5 + x7 + x9"));
    let out = run(&["ladder", "-", "--x3", "nope"], Some(&spec), None);
    assert_eq!(out.status.code(), Some(2));
    let frag = gen(&["gen", "fragment"]);
    let out = run(&["ladder", "-", "--x3", "x3"], Some(&frag), None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_writes_checkable_specs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "search",
            "--degrees",
            "1,1,1,3,3",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        None,
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let mut files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 2);
    for f in files {
        let out = run(&["check", f.to_str().unwrap()], None, None);
        assert_eq!(out.status.code(), Some(0));
    }
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let frag = gen(&["gen", "fragment"]);
    for args in [
        &["--format", "json", "check", "-"][..],
        &["subrings", "-"],
        &["verdict", "-"],
    ] {
        let one = run(args, Some(&frag), Some("1"));
        let many = run(args, Some(&frag), Some("4"));
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
    let one = run(&["search", "--degrees", "1,1,1,3,3"], None, Some("1"));
    let many = run(&["search", "--degrees", "1,1,1,3,3"], None, Some("4"));
    assert_eq!(one.stdout, many.stdout);
    let bad = run(&["gen", "fragment"], None, Some("zero"));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn gen_output_round_trips_through_check() {
    for args in [
        &["gen", "cyclic", "4"][..],
        &["gen", "so3", "9"],
        &["gen", "fragment"],
    ] {
        let spec = gen(args);
        let out = run(&["check", "-"], Some(&spec), None);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", text(&out));
    }
}
