//! The fixture corpus on disk:
//!
//! ```text
//! fixtures/apps/<app_id>.json     app graphs
//! fixtures/traces/<task_id>.json  authoring scripts
//! fixtures/tasks/<task_id>.json   task packages authored from those scripts
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use walkthrough_core::{AppGraph, TaskPackage};

use crate::formats::{self, FormatError};

/// Named groups of tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskSet {
    /// Training tasks.
    #[serde(rename = "training")]
    Training,
    A,
    B,
}

impl TaskSet {
    pub const fn tasks(self) -> &'static [&'static str] {
        match self {
            TaskSet::Training => &["tt1", "tt2"],
            TaskSet::A => &["t1", "t4", "t2"],
            TaskSet::B => &["t6", "t5", "t3"],
        }
    }
}

/// Every task of the corpus, training tasks first.
pub const ALL_TASKS: [&str; 8] = ["tt1", "tt2", "t1", "t2", "t3", "t4", "t5", "t6"];

/// Fixture directory shipped with the repository.
pub fn default_fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Loaded apps and tasks, shared read-only between workers.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub apps: BTreeMap<String, Arc<AppGraph>>,
    pub tasks: BTreeMap<String, TaskPackage>,
}

impl Corpus {
    /// Load the listed tasks and the apps they run on.
    pub fn load(dir: &Path, task_ids: &[&str]) -> Result<Self, FormatError> {
        let mut corpus = Corpus::default();
        for id in task_ids {
            let pkg = formats::load_package(&dir.join("tasks").join(format!("{id}.json")))?;
            if !corpus.apps.contains_key(&pkg.app_id) {
                let app = formats::load_app_graph(&app_path(dir, &pkg.app_id))?;
                corpus.apps.insert(pkg.app_id.clone(), Arc::new(app));
            }
            corpus.tasks.insert((*id).to_string(), pkg);
        }
        Ok(corpus)
    }

    pub fn load_all(dir: &Path) -> Result<Self, FormatError> {
        Self::load(dir, &ALL_TASKS)
    }

    pub fn task(&self, id: &str) -> Option<(&TaskPackage, Arc<AppGraph>)> {
        let pkg = self.tasks.get(id)?;
        let app = self.apps.get(&pkg.app_id)?;
        Some((pkg, Arc::clone(app)))
    }
}

pub fn app_path(dir: &Path, app_id: &str) -> PathBuf {
    dir.join("apps").join(format!("{app_id}.json"))
}

pub fn trace_path(dir: &Path, task_id: &str) -> PathBuf {
    dir.join("traces").join(format!("{task_id}.json"))
}

pub fn task_path(dir: &Path, task_id: &str) -> PathBuf {
    dir.join("tasks").join(format!("{task_id}.json"))
}
