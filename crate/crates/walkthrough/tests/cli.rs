//! The command line, driven in-process through `cli::run` and, for the exit
//! code of the real process, through the built binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use walkthrough::cli::{self, EXIT_INPUT, EXIT_NOT_FINISHED, EXIT_OK};
use walkthrough::corpus::{app_path, default_fixtures_dir, task_path, trace_path};
use walkthrough::fixtures::{request_path, script_path};
use walkthrough::formats;
use walkthrough_core::TaskPackage;

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn run_with(args: &[&str], stdin: &str) -> Run {
    let mut argv = vec!["walkthrough"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn run(args: &[&str]) -> Run {
    run_with(args, "")
}

fn fx() -> PathBuf {
    default_fixtures_dir()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn play_script_finishes_and_events_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let events = dir.path().join("events.jsonl");
    let (app, pkg, script) = (app_path(&fx(), "outlook"), task_path(&fx(), "t6"), script_path(&fx(), "t6"));
    let r = run(&["play", "--app", s(&app), "--package", s(&pkg), "--script", s(&script), "--events", s(&events)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(std::fs::read_to_string(&events).unwrap(), r.out);
    let last = r.out.lines().last().unwrap();
    assert!(last.contains("\"type\":\"success_tune\""), "{last}");
}

#[test]
fn play_that_stops_early_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("empty.json");
    std::fs::write(&script, "[]").unwrap();
    let r = run(&[
        "play",
        "--app",
        s(&app_path(&fx(), "youtube")),
        "--package",
        s(&task_path(&fx(), "t1")),
        "--script",
        s(&script),
    ]);
    assert_eq!(r.code, EXIT_NOT_FINISHED);
    // only the opening batch was spoken
    assert!(r.out.contains("\"type\":\"announcement\""));
    assert!(!r.out.contains("success"));
}

#[test]
fn interactive_play_speaks_cues() {
    let keys = "x nav_library\n\nx history\n\nh\nq\n";
    let r = run_with(
        &["play", "--app", s(&app_path(&fx(), "youtube")), "--package", s(&task_path(&fx(), "t1")), "--interactive"],
        keys,
    );
    assert_eq!(r.code, EXIT_NOT_FINISHED, "{}", r.err);
    assert!(r.out.contains("[beep]"), "{}", r.out);
    assert!(r.out.contains("hint C: "), "{}", r.out);
}

#[test]
fn author_from_trace_matches_the_shipped_package() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t4.json");
    let r = run(&[
        "author",
        "--app",
        s(&app_path(&fx(), "google-translate")),
        "--trace",
        s(&trace_path(&fx(), "t4")),
        "--out",
        s(&out),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.starts_with(&format!("wrote {} (5 steps)", out.display())));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(task_path(&fx(), "t4")).unwrap());
}

#[test]
fn author_with_request_takes_its_title() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    // the shipped trace names a title; drop it so the request supplies one
    let text = std::fs::read_to_string(trace_path(&fx(), "tt2")).unwrap();
    let mut script: serde_json::Value = serde_json::from_str(&text).unwrap();
    let last = script["commands"].as_array_mut().unwrap().last_mut().unwrap();
    last.as_object_mut().unwrap().retain(|k, _| k == "cmd");
    std::fs::write(&trace, script.to_string()).unwrap();
    let out = dir.path().join("pkg.json");
    let r = run(&[
        "author",
        "--app",
        s(&app_path(&fx(), "contacts-favorites")),
        "--trace",
        s(&trace),
        "--request",
        s(&request_path(&fx())),
        "--out",
        s(&out),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let pkg: TaskPackage = formats::load_package(&out).unwrap();
    assert_eq!(pkg.title, "Make John a favorite");
}

#[test]
fn author_with_illegal_trace_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("bad.json");
    // acting before describing the screen is out of order
    std::fs::write(
        &trace,
        r#"{"app_id":"youtube","commands":[{"cmd":"act","node":"nav_library","action":{"type":"click"}},{"cmd":"finalize"}]}"#,
    )
    .unwrap();
    let out = dir.path().join("pkg.json");
    let r = run(&["author", "--app", s(&app_path(&fx(), "youtube")), "--trace", s(&trace), "--out", s(&out)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.starts_with("error: "), "{}", r.err);
    assert!(!out.exists());
}

#[test]
fn interactive_authoring_session() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pkg.json");
    let lines = "click nav_library\ndescribe Home feed, tabs at the bottom\naccept\nclick nav_library\nfinish Open the library | Go to the Library tab\n";
    let r = run_with(&["author", "--app", s(&app_path(&fx(), "youtube")), "--interactive", "--out", s(&out)], lines);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    // the first click is refused and the session carries on
    assert!(r.out.contains("screen home"));
    let pkg = formats::load_package(&out).unwrap();
    assert_eq!(pkg.steps.len(), 1);
    assert_eq!(pkg.title, "Open the library");
}

#[test]
fn interactive_authoring_asks_for_each_prompt() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pkg.json");
    let lines = "describe list\naccept\nclick fab\ndescribe chooser\naccept\nclick device\ndescribe form\naccept\n\
                 type name Ana\ntype phone 912\nclick save\nprompts only one\nprompts the name; the number\n\
                 describe detail\naccept\nclick navigate_up\nfinish Add Ana | Add a contact\n";
    let r = run_with(&["author", "--app", s(&app_path(&fx(), "contacts")), "--interactive", "--out", s(&out)], lines);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.out, r.err);
    assert!(r.out.contains("2 field(s) need a prompt"), "{}", r.out);
    let pkg = formats::load_package(&out).unwrap();
    assert_eq!(pkg.steps.len(), 4);
    assert_eq!(pkg.steps[2].edit_prompts.len(), 2);
}

#[test]
fn simulate_writes_every_requested_format() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.json");
    let fixtures = fx();
    std::fs::write(
        &config,
        format!(
            r#"{{"fixtures":{:?},"tasks":["tt2"],"conditions":["guided"],"agents":[{{"policy":"compliant"}}],"seeds":{{"start":0,"count":3}}}}"#,
            fixtures.display().to_string()
        ),
    )
    .unwrap();
    let base = dir.path().join("out/report");
    let r = run(&["simulate", "--config", s(&config), "--out", s(&base), "--format", "csv", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    for ext in ["csv", "json"] {
        assert!(base.with_extension(ext).exists());
    }
    let rendered = run(&["report", "--input", s(&base.with_extension("json")), "--format", "csv"]);
    assert_eq!(rendered.out, std::fs::read_to_string(base.with_extension("csv")).unwrap());
}

#[test]
fn simulate_with_missing_or_bad_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["simulate", "--config", s(&missing)]).code, EXIT_INPUT);
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"tasks":["tt1"],"conditions":[],"agents":[{"policy":"compliant"}],"seeds":{"start":0,"count":1}}"#)
        .unwrap();
    let r = run(&["simulate", "--config", s(&empty)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("no conditions"), "{}", r.err);
}

#[test]
fn validate_and_match() {
    let r = run(&["validate", "--app", s(&app_path(&fx(), "netflix")), "--package", s(&task_path(&fx(), "t2"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("screens"));

    let dir = tempfile::tempdir().unwrap();
    let app = formats::load_app_graph(&app_path(&fx(), "youtube")).unwrap();
    let pkg = formats::load_package(&task_path(&fx(), "t1")).unwrap();
    let screen = dir.path().join("home.json");
    let snapshot = dir.path().join("target.json");
    formats::save_json(&screen, app.screen("home").unwrap()).unwrap();
    formats::save_json(&snapshot, &pkg.steps[0].clicked_view).unwrap();
    let r = run(&["match", "--screen", s(&screen), "--snapshot", s(&snapshot)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("nav_library"), "{}", r.out);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_walkthrough");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["--bogus"]), Some(1));
    assert_eq!(status(&["--help"]), Some(0));
    let (app, pkg, script) = (app_path(&fx(), "youtube"), task_path(&fx(), "t1"), script_path(&fx(), "t1"));
    assert_eq!(status(&["play", "--app", s(&app), "--package", s(&pkg), "--script", s(&script)]), Some(0));
}
