use slowcolor::cli::{run, EXIT_CAP, EXIT_FAILURE, EXIT_INTERRUPTED, EXIT_OK, EXIT_USAGE};
use std::process::Command;

fn slowcolor(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["slowcolor"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err, None);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn value_line(out: &str) -> &str {
    out.lines().find(|l| l.starts_with("value")).unwrap()
}

#[test]
fn solve_named_values() {
    for (spec, value) in [("K3,3", "10"), ("P7", "10"), ("n=1;", "1"), ("J(5,2)", "12")] {
        let (code, out, _) = slowcolor(&["solve", spec], "");
        assert_eq!(code, EXIT_OK, "{spec}");
        assert_eq!(value_line(&out).split_whitespace().nth(1), Some(value), "{spec}");
    }
}

#[test]
fn solve_transcript_and_bounds() {
    let (code, out, _) = slowcolor(&["solve", "K2", "--transcript", "--bounds"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("round  1: mark {0,1} (+2), color {0}, total 2"), "{out}");
    assert!(out.contains("score 3"));
    assert!(out.contains("within bounds: true"));
}

#[test]
fn solve_machine_formats() {
    let (_, out, _) = slowcolor(&["solve", "K3,2", "--format", "jsonl", "--transcript", "--bounds"], "");
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], 8);
    let score: usize = v["transcript"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["marked"].as_array().unwrap().len())
        .sum();
    assert_eq!(score, 8);
    assert_eq!(v["bounds"]["alpha"], 3);
    let (_, out, _) = slowcolor(&["solve", "P4", "--format", "csv"], "");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "graph,n,edges,value,optimal_marks");
    assert!(lines[1].starts_with("\"n=4; 0-1,1-2,2-3\",4,3,6,"));
}

#[test]
fn exit_codes() {
    assert_eq!(slowcolor(&["solve", "K3,,"], "").0, EXIT_USAGE);
    assert_eq!(slowcolor(&["solve"], "").0, EXIT_USAGE);
    assert_eq!(slowcolor(&["frobnicate"], "").0, EXIT_USAGE);
    let (code, _, err) = slowcolor(&["solve", "K13"], "");
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("limit of 12"));
    assert_eq!(slowcolor(&["solve", "K13", "--limit", "13"], "").0, EXIT_OK);
    assert_eq!(slowcolor(&["verify", "no-such"], "").0, EXIT_USAGE);
    assert_eq!(slowcolor(&["table", "bipartite", "--r", "5000", "--s", "5000"], "").0, EXIT_CAP);
    assert_eq!(slowcolor(&["play", "K3"], "0\n").0, EXIT_INTERRUPTED);
    assert_eq!(slowcolor(&["--help"], "").0, EXIT_OK);
}

#[test]
fn bound_command() {
    let (code, out, _) = slowcolor(&["bound", "C5"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("n * rho           25/2"));
    let (_, out, _) = slowcolor(&["bound", "K5", "--format", "csv"], "");
    assert_eq!(out.lines().nth(1), Some("5,10,1,0,15,5,9,15,25,15"));
}

#[test]
fn verify_suites() {
    let (code, out, _) = slowcolor(&["verify", "closed-forms"], "");
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("closed-forms (assertion): "));
    assert_eq!(slowcolor(&["verify", "tree-extremality", "--n", "8"], "").0, EXIT_OK);
    let (code, out, _) = slowcolor(&["verify", "join-gap", "--format", "jsonl"], "");
    // an experiment with flagged rows still exits 0
    assert_eq!(code, EXIT_OK);
    let head: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(head["kind"], "experiment");
    assert!(head["failed"].as_u64().unwrap() > 0);
}

#[test]
fn verify_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fit.csv");
    let p = path.to_str().unwrap();
    assert_eq!(slowcolor(&["verify", "krr-fit", "--r", "20", "--csv", p], "").0, EXIT_OK);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("r,value,fit,diff\n1,3,"));
    assert_eq!(csv.lines().count(), 21);
}

#[test]
fn table_command() {
    let (code, out, _) = slowcolor(&["table", "bipartite", "--r", "10", "--s", "10"], "");
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 121);
    assert!(rows.contains(&"3,3,10"));
    assert!(rows.contains(&"7,0,7"));
    let (_, out, _) = slowcolor(&["table", "join", "--r", "5", "--s", "2"], "");
    assert!(out.lines().any(|l| l == "5,2,12"));
}

#[test]
fn play_sessions() {
    let (code, out, _) = slowcolor(&["play", "K2", "--role", "painter", "--opponent", "optimal"], "0\n1\n");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("final score 3, optimal value 3"));
    let (code, out, _) = slowcolor(&["play", "E3", "--role", "painter", "--opponent", "mark-all"], "0 1 2\n");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("final score 3"));
    let (code, out, _) = slowcolor(&["play", "K3", "--role", "painter"], "0 1\n0\n1\n2\n");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("is not independent"));
    let (code, _, err) = slowcolor(&["play", "C5", "--role", "lister", "--opponent", "tree"], "");
    // the tree Painter refuses C5 once it has to answer
    assert_eq!(code, EXIT_INTERRUPTED, "{err}");
}

#[test]
fn config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("slowcolor.toml");
    std::fs::write(&path, "limit = 13\nformat = \"jsonl\"\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = slowcolor(&["--config", p, "solve", "K13"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with('{'));
    // flags win over the file
    assert_eq!(slowcolor(&["--config", p, "--limit", "12", "solve", "K13"], "").0, EXIT_CAP);
    std::fs::write(&path, "limit = 13\ncolour = \"red\"\n").unwrap();
    let (code, _, err) = slowcolor(&["--config", p, "solve", "K2"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("colour"));
}

#[test]
fn cache_persists_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("values.cache");
    let p = path.to_str().unwrap();
    assert_eq!(slowcolor(&["--cache", p, "cache", "warm", "--n", "4"], "").0, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("slowcolor-cache v1\n"));
    let (_, out, _) = slowcolor(&["--cache", p, "cache", "info"], "");
    let entries: usize = out.lines().find(|l| l.starts_with("entries")).unwrap()[8..].trim().parse().unwrap();
    assert!(entries > 0, "{out}");
    let (_, out, _) = slowcolor(&["--cache", p, "solve", "C4", "--stats"], "");
    assert!(out.contains("nodes 0, cache hits"), "{out}");
    assert_eq!(slowcolor(&["--cache", p, "cache", "clear"], "").0, EXIT_OK);
    let (_, out, _) = slowcolor(&["--cache", p, "cache", "info"], "");
    assert!(out.contains("entries  0"));
    assert_eq!(slowcolor(&["cache", "info"], "").0, EXIT_USAGE);
    std::fs::write(&path, "slowcolor-cache v9\n").unwrap();
    assert_eq!(slowcolor(&["--cache", p, "solve", "K2"], "").0, EXIT_USAGE);
}

#[test]
fn threads_do_not_change_output() {
    let run_with = |t: &str| slowcolor(&["--threads", t, "verify", "bounds", "--n", "5", "--samples", "10", "--format", "csv"], "");
    let (a, b) = (run_with("1"), run_with("3"));
    assert_eq!((a.0, b.0), (EXIT_OK, EXIT_OK));
    assert_eq!(a.1, b.1);
    let solve = |t: &str| slowcolor(&["--threads", t, "solve", "GNP(10,0.5,3)", "--transcript", "--bounds"], "").1;
    assert_eq!(solve("1"), solve("4"));
}

#[test]
fn binary_reads_cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.cache");
    let bin = env!("CARGO_BIN_EXE_slowcolor");
    let status = Command::new(bin).args(["solve", "P5"]).env("SLOWCOLOR_CACHE", &path).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("value   7"));
    assert!(path.exists());
    let status = Command::new(bin).args(["verify", "nothing"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    let _ = EXIT_FAILURE;
}

#[test]
fn cancellation_exits_130_and_flushes_cache() {
    use std::sync::atomic::AtomicBool;
    use std::sync::Arc;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.cache");
    let p = path.to_str().unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let cancel = Some(Arc::new(AtomicBool::new(true)));
    let code = run(["slowcolor", "--cache", p, "solve", "K3,3"], &mut "".as_bytes(), &mut out, &mut err, cancel);
    assert_eq!(code, EXIT_INTERRUPTED);
    assert!(String::from_utf8(err).unwrap().contains("interrupted"));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("slowcolor-cache v1"));
}
