//! Demonstration recording: a sighted author describes each screen, performs
//! the step, adds edit hints, and finally titles the task.
//!
//! Phases follow this graph:
//!
//! ```text
//! DescribeInterface -> Review -> PerformStep -> AddInformation -> DescribeInterface
//!        ^               |            |
//!        +---- retry ----+            +--------(no edits)------> DescribeInterface
//! DescribeInterface -> TitleAndDescription -> Done   (or straight to Done for requests)
//! ```

mod package;
mod validate;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub use package::{EditPrompt, StepRecord, TargetFlags, TaskPackage, TaskRequest, ViewSnapshot};
pub use validate::{validate_package, StepMatch, StepStatus, ValidationReport};

use crate::error::{AuthoringError, ModelError};
use crate::model::{ActionKind, ActionType, AppGraph, NodeId, ScreenTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    DescribeInterface,
    Review,
    PerformStep,
    AddInformation,
    TitleAndDescription,
    Done,
}

impl Phase {
    /// Whether `self -> to` is an edge of the authoring procedure.
    pub const fn can_transition(self, to: Phase) -> bool {
        use Phase::*;
        matches!(
            (self, to),
            (DescribeInterface, Review)
                | (Review, PerformStep)
                | (Review, DescribeInterface)
                | (PerformStep, AddInformation)
                | (PerformStep, DescribeInterface)
                | (AddInformation, DescribeInterface)
                | (DescribeInterface, TitleAndDescription)
                | (DescribeInterface, Done)
                | (TitleAndDescription, Done)
        )
    }
}

/// Source of capture timestamps.
pub trait Clock {
    fn now_ms(&mut self) -> u64;
}

/// Deterministic clock advancing by a fixed step per reading.
#[derive(Debug, Clone)]
pub struct SteppingClock {
    next: u64,
    step: u64,
}

impl SteppingClock {
    pub const fn new(start_ms: u64, step_ms: u64) -> Self {
        Self { next: start_ms, step: step_ms }
    }
}

impl Default for SteppingClock {
    fn default() -> Self {
        Self::new(0, 1000)
    }
}

impl Clock for SteppingClock {
    fn now_ms(&mut self) -> u64 {
        let now = self.next;
        self.next += self.step;
        now
    }
}

#[derive(Debug, Clone)]
struct PendingEdit {
    screen: String,
    node: NodeId,
    snapshot: ViewSnapshot,
}

/// A single author's in-progress demonstration over one app.
pub struct AuthoringSession {
    app: AppGraph,
    current_screen: String,
    phase: Phase,
    pending_description: Option<String>,
    recorded_steps: Vec<StepRecord>,
    originating_request: Option<TaskRequest>,
    pending_edits: Vec<PendingEdit>,
    pending_scrolls: Vec<ViewSnapshot>,
    sensitive: Vec<(String, NodeId)>,
    phase_log: Vec<(Phase, Phase)>,
    clock: Box<dyn Clock + Send>,
    author_id: String,
    task_id: Option<String>,
}

impl fmt::Debug for AuthoringSession {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AuthoringSession")
            .field("app", &self.app.app_id)
            .field("current_screen", &self.current_screen)
            .field("phase", &self.phase)
            .field("steps", &self.recorded_steps.len())
            .finish_non_exhaustive()
    }
}

/// Start a demonstration at the app's entry screen.
pub fn begin_task(
    app: AppGraph,
    request: Option<TaskRequest>,
) -> Result<AuthoringSession, AuthoringError> {
    AuthoringSession::begin(app, request)
}

impl AuthoringSession {
    pub fn begin(app: AppGraph, request: Option<TaskRequest>) -> Result<Self, AuthoringError> {
        if let Some(req) = &request {
            if req.app_id != app.app_id {
                return Err(AuthoringError::RequestAppMismatch {
                    request: req.request_id.clone(),
                    request_app: req.app_id.clone(),
                    app: app.app_id.clone(),
                });
            }
            if req.description.trim().is_empty() {
                return Err(AuthoringError::EmptyRequest(req.request_id.clone()));
            }
        }
        if app.entry().is_none() {
            return Err(ModelError::UnknownScreen(app.entry_screen.clone()).into());
        }
        Ok(Self {
            current_screen: app.entry_screen.clone(),
            app,
            phase: Phase::DescribeInterface,
            pending_description: None,
            recorded_steps: Vec::new(),
            originating_request: request,
            pending_edits: Vec::new(),
            pending_scrolls: Vec::new(),
            sensitive: Vec::new(),
            phase_log: Vec::new(),
            clock: Box::new(SteppingClock::default()),
            author_id: String::from("anonymous"),
            task_id: None,
        })
    }

    pub fn with_clock(mut self, clock: impl Clock + Send + 'static) -> Self {
        self.clock = Box::new(clock);
        self
    }

    pub fn with_author(mut self, author_id: impl Into<String>) -> Self {
        self.author_id = author_id.into();
        self
    }

    pub fn with_task_id(mut self, task_id: impl Into<String>) -> Self {
        self.task_id = Some(task_id.into());
        self
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn app(&self) -> &AppGraph {
        &self.app
    }

    pub fn current_screen(&self) -> &ScreenTree {
        self.app
            .screen(&self.current_screen)
            .expect("session only moves along validated transitions")
    }

    pub fn pending_description(&self) -> Option<&str> {
        self.pending_description.as_deref()
    }

    pub fn recorded_steps(&self) -> &[StepRecord] {
        &self.recorded_steps
    }

    pub fn originating_request(&self) -> Option<&TaskRequest> {
        self.originating_request.as_ref()
    }

    /// Every phase change so far, in order.
    pub fn phase_log(&self) -> &[(Phase, Phase)] {
        &self.phase_log
    }

    /// Number of distinct fields edited in the step being demonstrated, or,
    /// while prompts are due, the number of prompts the last step expects.
    pub fn pending_edit_count(&self) -> usize {
        match (self.phase, self.recorded_steps.last()) {
            (Phase::AddInformation, Some(step)) => step.edit_prompts.len(),
            _ => self.pending_edits.len(),
        }
    }

    fn expect_phase(&self, phase: Phase) -> Result<(), AuthoringError> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(AuthoringError::WrongPhase(self.phase))
        }
    }

    fn move_to(&mut self, to: Phase) {
        debug_assert!(self.phase.can_transition(to), "{:?} -> {:?}", self.phase, to);
        self.phase_log.push((self.phase, to));
        self.phase = to;
    }

    /// Store the author's description of the current screen.
    pub fn record_screen_description(&mut self, transcript: &str) -> Result<(), AuthoringError> {
        self.expect_phase(Phase::DescribeInterface)?;
        if transcript.trim().is_empty() {
            return Err(AuthoringError::EmptyDescription);
        }
        self.pending_description = Some(transcript.to_string());
        self.move_to(Phase::Review);
        Ok(())
    }

    /// Accept the description and go on to demonstrate, or record it again.
    pub fn review_description(&mut self, accept: bool) -> Result<(), AuthoringError> {
        self.expect_phase(Phase::Review)?;
        if accept {
            self.move_to(Phase::PerformStep);
        } else {
            self.pending_description = None;
            self.move_to(Phase::DescribeInterface);
        }
        Ok(())
    }

    /// Flag a view on the current screen as sensitive for this step.
    pub fn mark_sensitive(&mut self, node: &NodeId) -> Result<(), AuthoringError> {
        self.expect_phase(Phase::PerformStep)?;
        if self.current_screen().find_node(node).is_none() {
            return Err(ModelError::UnknownNode(node.clone()).into());
        }
        self.sensitive.push((self.current_screen.clone(), node.clone()));
        Ok(())
    }

    fn is_marked_sensitive(&self, screen: &str, node: &NodeId) -> bool {
        self.sensitive.iter().any(|(s, n)| s == screen && n == node)
    }

    /// Perform one action on the current screen. Edits and scrolls accumulate;
    /// a click or long click closes the step.
    pub fn demonstrate_action(
        &mut self,
        node_id: &NodeId,
        action: ActionKind,
    ) -> Result<(), AuthoringError> {
        self.expect_phase(Phase::PerformStep)?;
        let kind = action.action_type();
        let screen_id = self.current_screen.clone();
        let tree = self.current_screen();
        let index = tree.index();
        let at = index
            .position(node_id)
            .ok_or_else(|| ModelError::UnknownNode(node_id.clone()))?;
        let node = index.node(at);
        if !node.visible {
            return Err(AuthoringError::NotVisible(node_id.clone()));
        }
        if !kind.permitted_by(&node.capabilities) {
            return Err(AuthoringError::ActionNotPermitted { node: node_id.clone(), action: kind });
        }
        let snapshot = ViewSnapshot::capture(&index, at);

        match kind {
            ActionType::SetText => {
                let already = self
                    .pending_edits
                    .iter()
                    .any(|e| e.screen == screen_id && &e.node == node_id);
                if !already {
                    self.pending_edits.push(PendingEdit {
                        screen: screen_id.clone(),
                        node: node_id.clone(),
                        snapshot,
                    });
                }
            }
            ActionType::ScrollForward | ActionType::ScrollBackward => {
                if !self.pending_scrolls.contains(&snapshot) {
                    self.pending_scrolls.push(snapshot);
                }
            }
            ActionType::Click | ActionType::LongClick => {
                let interactive_views = index
                    .preorder()
                    .enumerate()
                    .filter(|(_, e)| e.node.is_interactive())
                    .map(|(i, _)| ViewSnapshot::capture(&index, i))
                    .collect();
                let (activity, package_name, screen_title) =
                    (tree.activity.clone(), tree.package_name.clone(), tree.title.clone());
                let mut clicked_view = snapshot;
                clicked_view.flags.sensitive = self.is_marked_sensitive(&screen_id, node_id);

                let edits = core::mem::take(&mut self.pending_edits);
                let edit_prompts = edits
                    .into_iter()
                    .map(|e| {
                        let mut field = e.snapshot;
                        field.flags.dynamic = true;
                        field.flags.sensitive = self.is_marked_sensitive(&e.screen, &e.node);
                        EditPrompt { field, prompt: String::new() }
                    })
                    .collect::<Vec<_>>();
                let step = StepRecord {
                    activity,
                    package_name,
                    screen_title,
                    timestamp_ms: self.clock.now_ms(),
                    description_transcript: self.pending_description.take().unwrap_or_default(),
                    interaction: action.clone(),
                    clicked_view,
                    interactive_views,
                    scrolled_views: core::mem::take(&mut self.pending_scrolls),
                    edit_prompts,
                };
                let needs_prompts = !step.edit_prompts.is_empty();
                self.recorded_steps.push(step);
                self.sensitive.clear();
                self.follow(node_id, kind);
                self.move_to(if needs_prompts {
                    Phase::AddInformation
                } else {
                    Phase::DescribeInterface
                });
                return Ok(());
            }
        }
        self.follow(node_id, kind);
        Ok(())
    }

    fn follow(&mut self, node: &NodeId, kind: ActionType) {
        if let Some(target) = self.app.transition(&self.current_screen, node, kind) {
            self.current_screen = target.to_string();
        }
    }

    /// Attach one prompt per edited field, in edit order.
    pub fn provide_edit_prompts(&mut self, prompts: &[String]) -> Result<(), AuthoringError> {
        self.expect_phase(Phase::AddInformation)?;
        let step = self.recorded_steps.last_mut().ok_or(AuthoringError::NoSteps)?;
        if prompts.len() != step.edit_prompts.len() {
            return Err(AuthoringError::PromptCountMismatch {
                expected: step.edit_prompts.len(),
                got: prompts.len(),
            });
        }
        if let Some(i) = prompts.iter().position(|p| p.trim().is_empty()) {
            return Err(AuthoringError::EmptyPrompt(i));
        }
        for (slot, prompt) in step.edit_prompts.iter_mut().zip(prompts) {
            slot.prompt = prompt.trim().to_string();
        }
        self.move_to(Phase::DescribeInterface);
        Ok(())
    }

    /// Close the demonstration. Title and description come from the
    /// originating request when there is one.
    pub fn finalize_task(
        &mut self,
        title: Option<&str>,
        description: Option<&str>,
    ) -> Result<TaskPackage, AuthoringError> {
        self.expect_phase(Phase::DescribeInterface)?;
        if self.recorded_steps.is_empty() {
            return Err(AuthoringError::NoSteps);
        }
        let non_blank = |s: Option<&str>| s.map(str::trim).filter(|s| !s.is_empty()).map(String::from);
        let (title, description, request_id) = match &self.originating_request {
            Some(req) => (req.title.clone(), req.description.clone(), Some(req.request_id.clone())),
            None => {
                let title = non_blank(title).ok_or(AuthoringError::MissingTitle)?;
                let description = non_blank(description).ok_or(AuthoringError::MissingDescription)?;
                self.move_to(Phase::TitleAndDescription);
                (title, description, None)
            }
        };
        self.move_to(Phase::Done);
        let task_id = self
            .task_id
            .clone()
            .or_else(|| request_id.clone())
            .unwrap_or_else(|| slug(&title));
        Ok(TaskPackage {
            task_id,
            app_id: self.app.app_id.clone(),
            package_name: self.app.package_name.clone(),
            title,
            description,
            author_id: self.author_id.clone(),
            request_id,
            steps: self.recorded_steps.clone(),
        })
    }
}

fn slug(title: &str) -> String {
    let mut out = String::new();
    for c in title.chars() {
        if c.is_alphanumeric() {
            out.extend(c.to_lowercase());
        } else if !out.ends_with('-') && !out.is_empty() {
            out.push('-');
        }
    }
    while out.ends_with('-') {
        out.pop();
    }
    out
}
