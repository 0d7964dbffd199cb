//! The shipped fixture corpus: it is what the builder produces, every file
//! survives a parse and re-serialize unchanged, and every package validates.

use std::path::Path;

use walkthrough::corpus::{app_path, default_fixtures_dir, task_path, trace_path, Corpus, ALL_TASKS};
use walkthrough::fixtures::{self, request_path, script_path};
use walkthrough::formats::{self, FormatError};
use walkthrough::script::AuthoringScript;
use walkthrough_core::authoring::validate_package;
use walkthrough_core::sim::NavAction;
use walkthrough_core::{AppGraph, TaskPackage, TaskRequest};

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned>(path: &Path) {
    let text = read(path);
    let value: T = formats::from_str(&text, path).unwrap();
    assert_eq!(formats::to_canonical(&value), text, "{}", path.display());
}

#[test]
fn fixtures_on_disk_are_up_to_date() {
    let built = fixtures::build().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let written = fixtures::write(dir.path(), &built).unwrap();
    for path in written {
        let rel = path.strip_prefix(dir.path()).unwrap();
        let shipped = default_fixtures_dir().join(rel);
        assert_eq!(read(&path), read(&shipped), "{} is stale; rerun the build_fixtures example", rel.display());
    }
}

#[test]
fn every_file_round_trips_byte_for_byte() {
    let dir = default_fixtures_dir();
    for id in ALL_TASKS {
        let pkg: TaskPackage = formats::load_package(&task_path(&dir, id)).unwrap();
        round_trip::<TaskPackage>(&task_path(&dir, id));
        round_trip::<AppGraph>(&app_path(&dir, &pkg.app_id));
        round_trip::<AuthoringScript>(&trace_path(&dir, id));
        round_trip::<Vec<NavAction>>(&script_path(&dir, id));
    }
    round_trip::<Vec<NavAction>>(&script_path(&dir, "t1-recovery"));
    round_trip::<TaskRequest>(&request_path(&dir));
}

#[test]
fn packages_validate_against_their_apps() {
    let corpus = Corpus::load_all(&default_fixtures_dir()).unwrap();
    assert_eq!(corpus.tasks.len(), 8);
    assert_eq!(corpus.apps.len(), 8);
    for id in ALL_TASKS {
        let (pkg, app) = corpus.task(id).unwrap();
        let report = validate_package(pkg, &app);
        assert!(report.is_clean(), "{id}: {report:?}");
        // only the translate task plants a same-label decoy
        let healed = report.steps.iter().filter(|s| s.candidate_count > 1).count();
        assert_eq!(healed, usize::from(id == "t4"), "{id}: {report:?}");
        assert!(app.violations().is_empty(), "{id}");
    }
}

#[test]
fn malformed_files_are_reported_with_their_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"app_id\": 3}").unwrap();
    let err = formats::load_app_graph(&path).unwrap_err();
    assert!(matches!(err, FormatError::Parse { .. }), "{err:?}");
    assert!(err.to_string().contains("broken.json"));
    let missing = formats::load_package(&dir.path().join("absent.json")).unwrap_err();
    assert!(matches!(missing, FormatError::Io { .. }));
}
