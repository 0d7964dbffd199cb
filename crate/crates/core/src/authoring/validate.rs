use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{StepRecord, TaskPackage};
use crate::matching::{find_edit_field, find_scroll_container_in, find_target_in, MatchOutcome};
use crate::model::{ActionType, AppGraph};

/// Upper bound on scroll pages followed while looking for one target.
const MAX_SCROLL_PAGES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Exact,
    HealedByTieBreak,
    Unmatched,
    /// An earlier step failed, so replay never got here.
    NotReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepMatch {
    pub index: usize,
    pub status: StepStatus,
    pub candidate_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub screen: Option<String>,
    #[serde(default)]
    pub scrolls: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub task_id: String,
    pub app_matches: bool,
    pub findings: Vec<String>,
    pub steps: Vec<StepMatch>,
    pub final_screen: Option<String>,
    pub completed: bool,
}

impl ValidationReport {
    /// Every step matched, possibly after tie-breaking, and replay completed.
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
            && self.completed
            && self.steps.iter().all(|s| matches!(s.status, StepStatus::Exact | StepStatus::HealedByTieBreak))
    }
}

/// Replay `pkg` over `app` with the matcher and report per-step outcomes.
/// Reports problems; never repairs them.
pub fn validate_package(pkg: &TaskPackage, app: &AppGraph) -> ValidationReport {
    let mut findings: Vec<String> = pkg.problems().into_iter().map(String::from).collect();
    let app_matches = pkg.app_id == app.app_id && pkg.package_name == app.package_name;
    if !app_matches {
        findings.push(format!(
            "package targets {} ({}) but the app graph is {} ({})",
            pkg.app_id, pkg.package_name, app.app_id, app.package_name
        ));
    }
    for v in app.violations() {
        findings.push(v.to_string());
    }

    let mut steps = Vec::with_capacity(pkg.steps.len());
    let mut screen = app.entry().map(|s| s.screen_id.clone());
    let mut failed = !app_matches;
    for (i, step) in pkg.steps.iter().enumerate() {
        let Some(current) = screen.clone().filter(|_| !failed) else {
            steps.push(StepMatch {
                index: i,
                status: StepStatus::NotReached,
                candidate_count: 0,
                screen: None,
                scrolls: 0,
            });
            continue;
        };
        let (outcome, at, scrolls) = replay_step(app, &current, step);
        let status = match (&outcome.node_id, outcome.candidate_count) {
            (None, _) => StepStatus::Unmatched,
            (Some(_), 1) => StepStatus::Exact,
            (Some(_), _) => StepStatus::HealedByTieBreak,
        };
        steps.push(StepMatch {
            index: i,
            status,
            candidate_count: outcome.candidate_count,
            screen: Some(at.clone()),
            scrolls,
        });
        match outcome.node_id {
            Some(node) => {
                let kind = step.interaction.action_type();
                screen = Some(app.transition(&at, &node, kind).map_or(at, ToString::to_string));
            }
            None => {
                findings.push(format!("step {i}: target '{}' not found", step.clicked_view.closest_text));
                screen = Some(at);
                failed = true;
            }
        }
    }
    let completed = !failed && !pkg.steps.is_empty();
    ValidationReport {
        task_id: pkg.task_id.clone(),
        app_matches,
        findings,
        steps,
        final_screen: screen,
        completed,
    }
}

/// Apply the step's edits, scroll toward its target if needed, and match it.
/// Returns the outcome, the screen it was matched on, and scrolls followed.
fn replay_step(app: &AppGraph, start: &str, step: &StepRecord) -> (MatchOutcome, String, usize) {
    let mut at = start.to_string();
    for edit in &step.edit_prompts {
        let Some(tree) = app.screen(&at) else { break };
        let index = tree.index();
        if let Some(field) = find_edit_field(&index, &edit.field).node_id {
            if let Some(next) = app.transition(&at, &field, ActionType::SetText) {
                at = next.to_string();
            }
        }
    }
    let mut scrolls = 0;
    loop {
        let Some(tree) = app.screen(&at) else {
            return (MatchOutcome::not_found(), at, scrolls);
        };
        let index = tree.index();
        let outcome = find_target_in(&index, &step.clicked_view);
        if outcome.is_found() || scrolls >= MAX_SCROLL_PAGES {
            return (outcome, at, scrolls);
        }
        let next = step.scrolled_views.iter().find_map(|view| {
            let container = find_scroll_container_in(&index, view)?;
            app.transition(&at, &container, ActionType::ScrollForward)
        });
        match next {
            Some(next) if next != at => {
                at = next.to_string();
                scrolls += 1;
            }
            _ => return (outcome, at, scrolls),
        }
    }
}
