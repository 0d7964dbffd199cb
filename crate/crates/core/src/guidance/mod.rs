//! Playthrough state machine.
//!
//! Each target is announced behind a blocking overlay, then the user explores
//! freely with a hint bar on top. Focusing the target beeps, activating
//! anything else bops and triggers a search for an earlier step's target on
//! the resulting screen. Hints cycle A to I, skipping unavailable types.

mod events;
pub mod text;

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub use events::{GuidanceEvent, HintType, LoggedEvent, OverlayKind};
pub use text::announce_target;

use crate::authoring::{StepRecord, TaskPackage};
use crate::error::PlaythroughError;
use crate::matching::{
    find_previous_target, find_scroll_container_in, find_target_in, sector_label, SectorLabel,
};
use crate::model::{ActionType, NodeId, ScreenTree};

/// What the guidance engine needs from the device it runs on.
pub trait Device {
    fn app_id(&self) -> &str;
    /// Relaunch the app on its first screen.
    fn reset(&mut self);
    fn screen(&self) -> &ScreenTree;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlayPhase {
    Announcing,
    FreeExploration,
    HintPlaying,
    Finished,
    Exited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoreOptionsChoice {
    Exit,
    Restart,
}

/// Next hint type to try, and how many EditBox hints were already given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HintCursor {
    pub next: HintType,
    pub edit_sub_index: usize,
}

impl Default for HintCursor {
    fn default() -> Self {
        Self { next: HintType::A, edit_sub_index: 0 }
    }
}

/// Which hint types apply to the current step on the current screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HintAvailability {
    available: [bool; 9],
    target: Option<(NodeId, Option<SectorLabel>)>,
    scroll_caption: Option<String>,
    /// Latest step at or before the current one whose target is on screen.
    resumable: Option<(usize, NodeId, Option<SectorLabel>)>,
    /// Latest step strictly before the current one whose target is on screen.
    earlier: Option<usize>,
}

impl HintAvailability {
    pub fn evaluate(steps: &[StepRecord], step_index: usize, deviated: bool, tree: &ScreenTree) -> Self {
        let step = &steps[step_index];
        let index = tree.index();
        let locate = |node: &NodeId| locate(tree, node);
        let target = find_target_in(&index, &step.clicked_view)
            .node_id
            .map(|n| {
                let sector = locate(&n);
                (n, sector)
            });
        let scroll_caption = step.scrolled_views.iter().find_map(|view| {
            find_scroll_container_in(&index, view).map(|_| String::from(view.spoken_label()))
        });
        let resumable = if deviated {
            find_previous_target(tree, steps, step_index + 1).map(|(k, n)| {
                let sector = locate(&n);
                (k, n, sector)
            })
        } else {
            None
        };
        let earlier = match &resumable {
            Some((k, _, _)) if *k < step_index => Some(*k),
            Some(_) => find_previous_target(tree, steps, step_index).map(|(k, _)| k),
            None => None,
        };

        let on_screen = target.is_some();
        let scrollable = !deviated && !on_screen && scroll_caption.is_some();
        let mut available = [false; 9];
        available[HintType::A.index()] = !step.edit_prompts.is_empty();
        available[HintType::B.index()] = step.interaction.action_type() == ActionType::LongClick;
        available[HintType::C.index()] = on_screen;
        available[HintType::D.index()] = scrollable;
        available[HintType::E.index()] = scrollable;
        available[HintType::F.index()] = deviated && !on_screen && scroll_caption.is_none();
        available[HintType::G.index()] = true;
        available[HintType::H.index()] = true;
        available[HintType::I.index()] = deviated;
        Self { available, target, scroll_caption, resumable, earlier }
    }

    pub fn is_available(&self, hint: HintType) -> bool {
        self.available[hint.index()]
    }

    pub fn available_types(&self) -> impl Iterator<Item = HintType> + '_ {
        HintType::ALL.into_iter().filter(|h| self.is_available(*h))
    }
}

/// A guided run through one [`TaskPackage`].
#[derive(Debug, Clone)]
pub struct PlaythroughState {
    package: TaskPackage,
    step_index: usize,
    phase: PlayPhase,
    deviated: bool,
    hint_cursor: HintCursor,
    overlay: Option<OverlayKind>,
    event_log: Vec<LoggedEvent>,
}

/// Reset the device and announce the first target.
pub fn start_playthrough(
    package: TaskPackage,
    device: &mut impl Device,
) -> Result<(PlaythroughState, Vec<GuidanceEvent>), PlaythroughError> {
    PlaythroughState::start(package, device)
}

impl PlaythroughState {
    pub fn start(
        package: TaskPackage,
        device: &mut impl Device,
    ) -> Result<(Self, Vec<GuidanceEvent>), PlaythroughError> {
        if package.app_id != device.app_id() {
            return Err(PlaythroughError::AppMismatch {
                package_app: package.app_id.clone(),
                device_app: device.app_id().into(),
            });
        }
        if package.steps.is_empty() {
            return Err(PlaythroughError::EmptyPackage);
        }
        device.reset();
        let mut state = Self {
            package,
            step_index: 0,
            phase: PlayPhase::Announcing,
            deviated: false,
            hint_cursor: HintCursor::default(),
            overlay: None,
            event_log: Vec::new(),
        };
        let mut out = Vec::new();
        state.announce_current(&mut out);
        Ok((state, out))
    }

    pub fn package(&self) -> &TaskPackage {
        &self.package
    }

    pub fn phase(&self) -> PlayPhase {
        self.phase
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }

    pub fn deviated(&self) -> bool {
        self.deviated
    }

    pub fn hint_cursor(&self) -> HintCursor {
        self.hint_cursor
    }

    pub fn overlay(&self) -> Option<OverlayKind> {
        self.overlay
    }

    pub fn events(&self) -> &[LoggedEvent] {
        &self.event_log
    }

    pub fn current_step(&self) -> Option<&StepRecord> {
        self.package.steps.get(self.step_index)
    }

    pub fn is_finished(&self) -> bool {
        self.phase == PlayPhase::Finished
    }

    /// Hint availability for the current step, or `None` once the run ended.
    pub fn availability(&self, tree: &ScreenTree) -> Option<HintAvailability> {
        (self.step_index < self.package.steps.len())
            .then(|| HintAvailability::evaluate(&self.package.steps, self.step_index, self.deviated, tree))
    }

    fn emit(&mut self, out: &mut Vec<GuidanceEvent>, event: GuidanceEvent) {
        match &event {
            GuidanceEvent::OverlayShown { kind } => self.overlay = Some(*kind),
            GuidanceEvent::OverlayRemoved => self.overlay = None,
            _ => {}
        }
        let seq = self.event_log.len() as u64;
        self.event_log.push(LoggedEvent { seq, event: event.clone() });
        out.push(event);
    }

    fn speak_blocking(&mut self, out: &mut Vec<GuidanceEvent>, spoken: GuidanceEvent) {
        self.emit(out, GuidanceEvent::OverlayShown { kind: OverlayKind::Blocking });
        self.emit(out, spoken);
        self.emit(out, GuidanceEvent::OverlayRemoved);
        self.emit(out, GuidanceEvent::OverlayShown { kind: OverlayKind::HintBar });
    }

    fn announce_current(&mut self, out: &mut Vec<GuidanceEvent>) {
        self.phase = PlayPhase::Announcing;
        self.deviated = false;
        self.hint_cursor = HintCursor::default();
        let text = announce_target(&self.package.steps[self.step_index]);
        self.speak_blocking(out, GuidanceEvent::Announcement { text });
        self.phase = PlayPhase::FreeExploration;
    }

    /// Screen-reader focus landed on `node`.
    pub fn on_focus(&mut self, tree: &ScreenTree, node: &NodeId) -> Vec<GuidanceEvent> {
        let mut out = Vec::new();
        if self.phase != PlayPhase::FreeExploration {
            return out;
        }
        let step = &self.package.steps[self.step_index];
        if find_target_in(&tree.index(), &step.clicked_view).node_id.as_ref() == Some(node) {
            self.emit(&mut out, GuidanceEvent::Beep);
        }
        out
    }

    /// The user activated `node` on `before`; the device is now on `after`.
    pub fn on_select(
        &mut self,
        before: &ScreenTree,
        node: &NodeId,
        action: ActionType,
        after: &ScreenTree,
    ) -> Vec<GuidanceEvent> {
        let mut out = Vec::new();
        if self.phase != PlayPhase::FreeExploration || !action.is_activation() {
            return out;
        }
        let steps = &self.package.steps;
        let step = &steps[self.step_index];
        let is_target = find_target_in(&before.index(), &step.clicked_view).node_id.as_ref() == Some(node);
        if is_target && action == step.interaction.action_type() {
            self.step_index += 1;
            self.deviated = false;
            self.hint_cursor = HintCursor::default();
            if self.step_index == self.package.steps.len() {
                self.phase = PlayPhase::Finished;
                self.overlay = None;
                let text = text::success_message(&self.package.title);
                self.emit(&mut out, GuidanceEvent::SuccessMessage { text });
                self.emit(&mut out, GuidanceEvent::SuccessTune);
            } else {
                self.announce_current(&mut out);
            }
            return out;
        }

        self.emit(&mut out, GuidanceEvent::Bop);
        self.deviated = true;
        if let Some((k, found)) = find_previous_target(after, &self.package.steps, self.step_index) {
            let label = self.package.steps[k].clicked_view.spoken_label();
            let text = match locate(after, &found) {
                Some(sector) => text::resume_from(label, sector),
                None => alloc::format!("You can resume the task from the step {label}"),
            };
            self.emit(&mut out, GuidanceEvent::RecoveryAnnounced { step_index: k, text });
            self.step_index = k;
            self.announce_current(&mut out);
        }
        out
    }

    /// The hint element was activated: speak one hint of the next available type.
    pub fn next_hint(&mut self, tree: &ScreenTree) -> Vec<GuidanceEvent> {
        let mut out = Vec::new();
        if self.phase != PlayPhase::FreeExploration {
            return out;
        }
        let avail = HintAvailability::evaluate(&self.package.steps, self.step_index, self.deviated, tree);
        let mut hint = self.hint_cursor.next;
        // G and H are always available, so this terminates within nine probes
        while !avail.is_available(hint) {
            hint = hint.next();
        }
        let step = &self.package.steps[self.step_index];
        let label = step.clicked_view.spoken_label();
        let spoken = match hint {
            HintType::A => {
                let sub = self.hint_cursor.edit_sub_index.min(step.edit_prompts.len() - 1);
                let text = text::edit_box_detail(sub, &step.edit_prompts[sub].prompt);
                if sub + 1 < step.edit_prompts.len() {
                    self.hint_cursor = HintCursor { next: HintType::A, edit_sub_index: sub + 1 };
                } else {
                    self.hint_cursor = HintCursor { next: HintType::B, edit_sub_index: 0 };
                }
                text
            }
            HintType::B => String::from(text::LONG_PRESS_INSTRUCTION),
            HintType::C => match &avail.target {
                Some((_, Some(sector))) => text::target_position(label, *sector),
                _ => alloc::format!("The target {label} is on this screen"),
            },
            HintType::D => text::scrollable(avail.scroll_caption.as_deref().unwrap_or_default()),
            HintType::E => text::swipe_scroll(avail.scroll_caption.as_deref().unwrap_or_default()),
            HintType::F => text::target_not_found(label),
            HintType::G => {
                let transcript = step.description_transcript.trim();
                if transcript.is_empty() {
                    String::from(text::NO_LAYOUT_DESCRIPTION)
                } else {
                    String::from(transcript)
                }
            }
            HintType::H => {
                let k = if self.deviated { avail.earlier.unwrap_or(self.step_index) } else { self.step_index };
                announce_target(&self.package.steps[k])
            }
            HintType::I => match &avail.resumable {
                Some((k, _, Some(sector))) => {
                    text::resume_from(self.package.steps[*k].clicked_view.spoken_label(), *sector)
                }
                _ => String::from(text::RESUME_ANY_STEP),
            },
        };
        if hint != HintType::A {
            self.hint_cursor = HintCursor { next: hint.next(), edit_sub_index: 0 };
        }

        if hint == HintType::G {
            // plays until it ends or the user double taps the overlay
            self.phase = PlayPhase::HintPlaying;
            self.emit(&mut out, GuidanceEvent::OverlayShown { kind: OverlayKind::Blocking });
            self.emit(&mut out, GuidanceEvent::HintSpoken { hint, text: spoken });
        } else {
            self.phase = PlayPhase::HintPlaying;
            self.speak_blocking(&mut out, GuidanceEvent::HintSpoken { hint, text: spoken });
            self.phase = PlayPhase::FreeExploration;
        }
        out
    }

    /// The layout description finished playing.
    pub fn finish_hint_playback(&mut self) -> Vec<GuidanceEvent> {
        self.end_hint()
    }

    /// Double tap on the blocking overlay while the layout description plays.
    pub fn stop_hint(&mut self) -> Vec<GuidanceEvent> {
        self.end_hint()
    }

    fn end_hint(&mut self) -> Vec<GuidanceEvent> {
        let mut out = Vec::new();
        if self.phase != PlayPhase::HintPlaying {
            return out;
        }
        self.emit(&mut out, GuidanceEvent::OverlayRemoved);
        self.emit(&mut out, GuidanceEvent::OverlayShown { kind: OverlayKind::HintBar });
        self.phase = PlayPhase::FreeExploration;
        out
    }

    pub fn more_options(&mut self, choice: MoreOptionsChoice, device: &mut impl Device) -> Vec<GuidanceEvent> {
        let mut out = Vec::new();
        if self.phase != PlayPhase::FreeExploration {
            return out;
        }
        match choice {
            MoreOptionsChoice::Exit => {
                self.phase = PlayPhase::Exited;
                self.overlay = None;
                self.emit(&mut out, GuidanceEvent::Exited);
            }
            MoreOptionsChoice::Restart => {
                device.reset();
                self.step_index = 0;
                self.emit(&mut out, GuidanceEvent::Restarted);
                self.announce_current(&mut out);
            }
        }
        out
    }
}

fn locate(tree: &ScreenTree, node: &NodeId) -> Option<SectorLabel> {
    tree.find_node(node)
        .and_then(|n| sector_label(n.bounds, tree.screen_width, tree.screen_height).ok())
}

impl PlaythroughState {
    /// Convenience for tests and scripted runs: all events as plain values.
    pub fn event_values(&self) -> Vec<GuidanceEvent> {
        self.event_log.iter().map(|e| e.event.clone()).collect()
    }
}
