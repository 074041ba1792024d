use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use totality::{check_text, run, Config};
use totality_testkit::corpus::{self, CORPUS};

fn invoke(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("totality").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    corpus::path(name).display().to_string()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn nats_and_length_are_total() {
    let (code, out, err) = invoke(&["check", &path("nats_length")]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "TOTAL length\nTOTAL nats\n");
}

#[test]
fn bad_s_names_a_failing_loop() {
    let (code, out, _) = invoke(&["check", &path("bad_s")]);
    assert_eq!(code, 1);
    assert!(out.starts_with("UNKNOWN bad_s: with B=2, D=2, failing loop"), "{out}");
    assert!(out.contains("bad_s -> {"), "{out}");
}

#[test]
fn missing_file_is_an_error() {
    let (code, out, err) = invoke(&["check", "/nonexistent/none.ch"]);
    assert_eq!(code, 2);
    assert!(out.contains("ERROR /nonexistent/none.ch"));
    assert!(err.contains("cannot read file"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(invoke(&[]).0, 2);
    assert_eq!(invoke(&["check"]).0, 2);
    assert_eq!(invoke(&["check", "--bound-b", "0", &path("nats")]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check"));
}

#[test]
fn bounds_flags_change_verdicts() {
    assert_eq!(invoke(&["check", "--bound-b", "1", "--bound-d", "0", &path("c1c2")]).0, 1);
    assert_eq!(invoke(&["check", "--bound-b", "1", "--bound-d", "1", &path("c1c2")]).0, 0);
    assert_eq!(invoke(&["check", "--bound-b", "2", "--bound-d", "0", &path("s1s2")]).0, 0);
    assert_eq!(invoke(&["check", "--bound-b", "1", "--bound-d", "0", &path("s1s2")]).0, 1);
}

#[test]
fn parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "broken.ch", "val f : nat -> \n  | f x = ");
    let (code, out, err) = invoke(&["check", &f]);
    assert_eq!(code, 2);
    assert!(out.starts_with("ERROR "));
    assert!(err.starts_with("error: "), "{err}");
}

#[test]
fn worst_status_wins_over_files() {
    let (code, out, _) = invoke(&["check", &path("nats"), &path("bad_s")]);
    assert_eq!(code, 1);
    assert!(out.contains("== ") && out.contains("TOTAL nats") && out.contains("UNKNOWN bad_s"));
    assert_eq!(invoke(&["check", &path("nats"), "/nonexistent.ch", &path("bad_s")]).0, 2);
}

#[test]
fn pragma_overrides_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let src = corpus::source("c1c2");
    let at_val = src.find("val ").unwrap();
    let text = format!("{}-- totality: B=1, D=0\n{}", &src[..at_val], &src[at_val..]);
    let f = write_temp(&dir, "c1c2_d0.ch", &text);
    let (code, out, _) = invoke(&["check", &f]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("B=1, D=0"));
}

#[test]
fn magic_warns_about_bad_s() {
    let (code, out, _) = invoke(&["check", &path("magic")]);
    assert_eq!(code, 1);
    assert!(out.contains("TOTAL lower_left\n"));
    assert!(out.contains("TOTAL magic (warning: depends on unknown: bad_s)"), "{out}");
}

#[test]
fn dumps_are_sorted_and_labelled() {
    let (_, out, _) = invoke(&["check", "--dump-priorities", "--dump-callgraph", "--dump-closure", &path("nats")]);
    let want = "call-graph (nats):\n  nats -> {Tail@0 = nats(Succ@1 x1)}\n";
    assert!(out.contains(want), "{out}");
    assert!(out.contains("priorities (nats):"));
    let closure: Vec<&str> =
        out.split("closure (nats):\n").nth(1).unwrap().lines().take_while(|l| l.starts_with("  ")).collect();
    let report = check_text(corpus::source("nats"), &Config::new([]).options()).unwrap();
    let edges = &report.group_of("nats").unwrap().closure.as_ref().unwrap().edges;
    let want: Vec<String> = edges.iter().map(|e| format!("  {e}")).collect();
    assert_eq!(closure, want);
}

#[test]
fn json_schema() {
    let (code, out, _) = invoke(&["check", "--json", "--dump-closure", &path("nats_length"), &path("bad_s")]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let defs = v["definitions"].as_array().unwrap();
    assert_eq!(defs.len(), 3);
    for d in defs {
        for key in ["file", "name", "result", "bounds", "reasons", "depends_on_unknown"] {
            assert!(d.get(key).is_some(), "missing {key} in {d}");
        }
    }
    let bad = defs.iter().find(|d| d["name"] == "bad_s").unwrap();
    assert_eq!(bad["result"], "unknown");
    assert_eq!(bad["bounds"]["b"], 2);
    assert!(bad["reasons"][0]["loop"].as_str().unwrap().starts_with("bad_s -> "));
    assert_eq!(v["stats"]["definitions"], 3);
    assert_eq!(v["stats"]["total"], 2);
    assert_eq!(v["stats"]["unknown"], 1);
    assert!(v["closure"].is_array());
    assert!(v.get("callgraph").is_none());
    assert_eq!(v["errors"], Value::Array(vec![]));
}

#[test]
fn json_reports_unreadable_files() {
    let (code, out, _) = invoke(&["check", "--json", "/nonexistent.ch"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["errors"][0]["file"], "/nonexistent.ch");
    assert_eq!(v["stats"]["definitions"], 0);
}

#[test]
fn output_is_deterministic() {
    let args: Vec<String> = CORPUS.iter().map(|(n, _)| path(n)).collect();
    let mut argv = vec!["check", "--json", "--dump-closure", "--dump-callgraph"];
    argv.extend(args.iter().map(String::as_str));
    let first = invoke(&argv);
    for _ in 0..3 {
        assert_eq!(invoke(&argv), first);
    }
}

#[test]
fn corpus_exit_codes() {
    let expected = [
        ("nats", 0),
        ("length", 0),
        ("nats_length", 0),
        ("bad_s", 1),
        ("sums", 0),
        ("c1c2", 0),
        ("swap", 0),
        ("s1s2", 0),
        ("nats_list", 1),
        ("half", 0),
        ("magic", 1),
    ];
    assert_eq!(expected.len(), CORPUS.len());
    for (name, code) in expected {
        assert_eq!(invoke(&["check", &path(name)]).0, code, "{name}");
    }
}

#[test]
fn library_matches_command_line() {
    let config = Config::new([PathBuf::from(path("sums"))]);
    let report = check_text(corpus::source("sums"), &config.options()).unwrap();
    assert!(report.verdicts().all(|v| v.outcome.is_total()));
}

#[test]
fn binary_runs() {
    let exe = env!("CARGO_BIN_EXE_totality");
    let out = Command::new(exe).args(["check", &path("nats")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "TOTAL nats\n");
    let out = Command::new(exe).args(["check", &path("bad_s")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(exe).args(["check", "/nonexistent.ch"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
