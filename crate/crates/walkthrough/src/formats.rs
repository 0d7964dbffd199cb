//! JSON files: app graphs, screens, task packages, requests.
//!
//! Canonical form is pretty-printed JSON with struct fields in declaration
//! order, map keys sorted, and a trailing newline. Loading then saving a
//! canonical file reproduces it byte for byte.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use walkthrough_core::model::Violation;
use walkthrough_core::{AppGraph, ScreenTree, TaskPackage, TaskRequest};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: {}", Violations(.violations))]
    Invalid { path: PathBuf, violations: Vec<Violation> },
    #[error("{path}: {message}")]
    Content { path: PathBuf, message: String },
}

struct Violations<'a>(&'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} invariant violation(s)", self.0.len())?;
        for v in self.0 {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

/// Canonical JSON text for any serializable value.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("model types always serialize");
    text.push('\n');
    text
}

pub fn from_str<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parse any JSON document, with locations on syntax or shape errors.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = read(path)?;
    from_str(&text, path)
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| FormatError::Io { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, to_canonical(value)).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

/// Load an app graph and check every invariant.
pub fn load_app_graph(path: &Path) -> Result<AppGraph, FormatError> {
    let app: AppGraph = load_json(path)?;
    let violations = app.violations();
    if violations.is_empty() {
        Ok(app)
    } else {
        Err(FormatError::Invalid { path: path.to_path_buf(), violations })
    }
}

/// Load a single screen and check its invariants.
pub fn load_screen(path: &Path) -> Result<ScreenTree, FormatError> {
    let screen: ScreenTree = load_json(path)?;
    let violations = screen.violations();
    if violations.is_empty() {
        Ok(screen)
    } else {
        Err(FormatError::Invalid { path: path.to_path_buf(), violations })
    }
}

pub fn load_package(path: &Path) -> Result<TaskPackage, FormatError> {
    let pkg: TaskPackage = load_json(path)?;
    match pkg.problems().first() {
        None => Ok(pkg),
        Some(problem) => Err(FormatError::Content { path: path.to_path_buf(), message: (*problem).into() }),
    }
}

pub fn load_request(path: &Path) -> Result<TaskRequest, FormatError> {
    let req: TaskRequest = load_json(path)?;
    if req.description.trim().is_empty() {
        return Err(FormatError::Content {
            path: path.to_path_buf(),
            message: "request description is empty".into(),
        });
    }
    Ok(req)
}

/// Write one JSON value per line.
pub fn to_json_lines<T: Serialize>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(&item).expect("model types always serialize"));
        out.push('\n');
    }
    out
}
