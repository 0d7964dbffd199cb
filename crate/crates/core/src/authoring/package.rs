use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::model::{ActionKind, Bounds, Capabilities, TreeIndex};

/// Author-supplied flags on a captured view.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFlags {
    #[serde(default)]
    pub sensitive: bool,
    #[serde(default)]
    pub dynamic: bool,
}

impl TargetFlags {
    pub const fn any(&self) -> bool {
        self.sensitive || self.dynamic
    }

    fn is_clear(&self) -> bool {
        !self.any()
    }
}

/// View data captured at demonstration time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewSnapshot {
    pub class_name: String,
    pub package_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub content_description: Option<String>,
    pub closest_text: String,
    pub bounds: Bounds,
    pub depth: usize,
    pub capabilities: Capabilities,
    pub visible: bool,
    #[serde(default, skip_serializing_if = "TargetFlags::is_clear")]
    pub flags: TargetFlags,
}

impl ViewSnapshot {
    /// Snapshot of the node at pre-order position `at`.
    pub fn capture(index: &TreeIndex<'_>, at: usize) -> Self {
        let entry = index.entry(at);
        let node = entry.node;
        Self {
            class_name: node.class_name.clone(),
            package_name: node.package_name.clone(),
            text: node.text.clone(),
            content_description: node.content_description.clone(),
            closest_text: index.closest_text(at).to_string(),
            bounds: node.bounds,
            depth: entry.depth,
            capabilities: node.capabilities,
            visible: node.visible,
            flags: TargetFlags::default(),
        }
    }

    /// Short class name (`android.widget.Button` → `Button`).
    pub fn short_class(&self) -> &str {
        self.class_name.rsplit('.').next().unwrap_or(&self.class_name)
    }

    /// What announcements call this view: its closest text, else its class.
    pub fn spoken_label(&self) -> &str {
        let text = self.closest_text.trim();
        if text.is_empty() {
            self.short_class()
        } else {
            text
        }
    }
}

/// What to type into one edited field, as the author described it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditPrompt {
    pub field: ViewSnapshot,
    pub prompt: String,
}

/// One demonstrated step, delimited by an advancing activation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub activity: String,
    pub package_name: String,
    pub screen_title: String,
    pub timestamp_ms: u64,
    pub description_transcript: String,
    pub interaction: ActionKind,
    pub clicked_view: ViewSnapshot,
    pub interactive_views: Vec<ViewSnapshot>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scrolled_views: Vec<ViewSnapshot>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edit_prompts: Vec<EditPrompt>,
}

/// Portable output of authoring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskPackage {
    pub task_id: String,
    pub app_id: String,
    pub package_name: String,
    pub title: String,
    pub description: String,
    pub author_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub request_id: Option<String>,
    pub steps: Vec<StepRecord>,
}

impl TaskPackage {
    /// Structural problems: no steps, blank title or description.
    pub fn problems(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.steps.is_empty() {
            out.push("package has no steps");
        }
        if self.title.trim().is_empty() {
            out.push("package title is empty");
        }
        if self.description.trim().is_empty() {
            out.push("package description is empty");
        }
        out
    }
}

/// A user's request for a task nobody has authored yet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskRequest {
    pub request_id: String,
    pub app_id: String,
    pub title: String,
    pub description: String,
}
