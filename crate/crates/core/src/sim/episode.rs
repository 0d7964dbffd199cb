use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{Agent, DeviceEvent, NavAction, Observation, SimDevice};
use crate::authoring::{StepRecord, TaskPackage};
use crate::error::{NavError, PlaythroughError};
use crate::guidance::{Device, GuidanceEvent, LoggedEvent, PlayPhase, PlaythroughState};
use crate::matching::find_target_in;
use crate::model::AppGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Guided,
    Unguided,
}

impl Condition {
    pub const fn name(self) -> &'static str {
        match self {
            Condition::Guided => "guided",
            Condition::Unguided => "unguided",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpisodeEnd {
    /// Guidance reached its success message.
    Finished,
    /// Unguided run whose device trace covers every step.
    PathCompleted,
    Exited,
    BudgetExhausted,
}

/// Which task steps a device trace has performed, in any order.
#[derive(Debug, Clone)]
pub struct PathChecker {
    steps: Vec<StepRecord>,
    done: Vec<bool>,
}

impl PathChecker {
    pub fn new(steps: &[StepRecord]) -> Self {
        Self { steps: steps.to_vec(), done: alloc::vec![false; steps.len()] }
    }

    /// Mark every step whose target is the activated view with the right action.
    pub fn observe(&mut self, app: &AppGraph, event: &DeviceEvent) {
        let DeviceEvent::Activated { screen, node, action, .. } = event else { return };
        let Some(tree) = app.screen(screen) else { return };
        let index = tree.index();
        for (step, done) in self.steps.iter().zip(self.done.iter_mut()) {
            if !*done
                && step.interaction.action_type() == *action
                && find_target_in(&index, &step.clicked_view).node_id.as_ref() == Some(node)
            {
                *done = true;
            }
        }
    }

    pub fn completed(&self) -> usize {
        self.done.iter().filter(|d| **d).count()
    }

    pub fn is_complete(&self) -> bool {
        self.done.iter().all(|d| *d)
    }
}

/// Whether `trace` activates every step target of `steps` at some point.
pub fn path_covers(steps: &[StepRecord], app: &AppGraph, trace: &[DeviceEvent]) -> bool {
    let mut checker = PathChecker::new(steps);
    for event in trace {
        checker.observe(app, event);
    }
    checker.is_complete()
}

/// A device with guidance attached (or not), fed one gesture at a time.
#[derive(Debug, Clone)]
pub struct Episode {
    device: SimDevice,
    guidance: Option<PlaythroughState>,
    checker: PathChecker,
    opening: Vec<GuidanceEvent>,
}

impl Episode {
    /// Reset the device and, when guided, start the playthrough.
    pub fn new(task: &TaskPackage, app: Arc<AppGraph>, condition: Condition) -> Result<Self, PlaythroughError> {
        let mut device = SimDevice::new(app)?;
        let checker = PathChecker::new(&task.steps);
        let (guidance, opening) = match condition {
            Condition::Guided => {
                let (state, events) = PlaythroughState::start(task.clone(), &mut device)?;
                (Some(state), events)
            }
            Condition::Unguided => {
                if task.app_id != device.app_id() {
                    return Err(PlaythroughError::AppMismatch {
                        package_app: task.app_id.clone(),
                        device_app: device.app_id().into(),
                    });
                }
                device.reset();
                (None, Vec::new())
            }
        };
        Ok(Self { device, guidance, checker, opening })
    }

    pub fn device(&self) -> &SimDevice {
        &self.device
    }

    pub fn guidance(&self) -> Option<&PlaythroughState> {
        self.guidance.as_ref()
    }

    pub fn checker(&self) -> &PathChecker {
        &self.checker
    }

    /// Events spoken when the episode started.
    pub fn opening_events(&self) -> &[GuidanceEvent] {
        &self.opening
    }

    pub fn is_over(&self) -> bool {
        match &self.guidance {
            Some(g) => matches!(g.phase(), PlayPhase::Finished | PlayPhase::Exited),
            None => self.checker.is_complete(),
        }
    }

    /// Apply one gesture and return what guidance said in response. While
    /// the layout description plays, a double tap stops it and does nothing
    /// else; any other gesture first lets it finish.
    pub fn apply(&mut self, action: &NavAction) -> Result<Vec<GuidanceEvent>, NavError> {
        let mut out = Vec::new();
        if let Some(g) = &mut self.guidance {
            if g.phase() == PlayPhase::HintPlaying {
                if *action == NavAction::DoubleTapActivate {
                    out.extend(g.stop_hint());
                    return Ok(out);
                }
                out.extend(g.finish_hint_playback());
            }
        }
        let events = self.device.nav_step(action)?;
        let app = Arc::clone(self.device.app());
        for event in &events {
            self.checker.observe(&app, event);
            let Some(g) = &mut self.guidance else { continue };
            match event {
                DeviceEvent::FocusMoved { screen, node } => {
                    if let Some(tree) = app.screen(screen) {
                        out.extend(g.on_focus(tree, node));
                    }
                }
                DeviceEvent::Activated { screen, node, action, target } => {
                    if let (Some(before), Some(after)) = (app.screen(screen), app.screen(target)) {
                        out.extend(g.on_select(before, node, *action, after));
                    }
                }
                DeviceEvent::HintRequested => out.extend(g.next_hint(self.device.screen())),
                DeviceEvent::MoreOptions { choice } => out.extend(g.more_options(*choice, &mut self.device)),
                DeviceEvent::TextTyped { .. } | DeviceEvent::Scrolled { .. } | DeviceEvent::Reset { .. } => {}
            }
        }
        Ok(out)
    }
}

/// Outcome of one simulated run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeResult {
    pub task_id: String,
    pub condition: Condition,
    pub success: bool,
    pub end: EpisodeEnd,
    pub actions_used: u32,
    pub hints_total: u32,
    pub hints_by_type: [u32; 9],
    /// Wrong activations (bops).
    pub deviations: u32,
    pub recoveries: u32,
    pub steps_completed: usize,
    pub events: Vec<LoggedEvent>,
    pub actions: Vec<NavAction>,
    pub device_trace: Vec<DeviceEvent>,
}

/// Let `agent` attempt `task` for at most `budget` gestures. Unguided runs
/// succeed when the device trace covers every step of the task.
pub fn run_episode(
    task: &TaskPackage,
    app: Arc<AppGraph>,
    agent: &mut Agent,
    budget: u32,
    condition: Condition,
) -> Result<EpisodeResult, PlaythroughError> {
    let mut episode = Episode::new(task, app, condition)?;
    let guided = condition == Condition::Guided;
    let mut heard = episode.opening.clone();
    let mut actions = Vec::new();
    while !episode.is_over() && (actions.len() as u32) < budget {
        let action = {
            let device = &episode.device;
            let obs = Observation {
                events: &heard,
                tree: device.screen(),
                focus: device.focus(),
                edit_values: device.edit_values(),
                guided,
            };
            agent.next_action(&obs)
        };
        // illegal gestures do nothing but still cost an action
        heard = episode.apply(&action).unwrap_or_default();
        actions.push(action);
    }
    Ok(summarize(task, condition, episode, actions))
}

fn summarize(task: &TaskPackage, condition: Condition, episode: Episode, actions: Vec<NavAction>) -> EpisodeResult {
    let events: Vec<LoggedEvent> = episode.guidance.as_ref().map(|g| g.events().to_vec()).unwrap_or_default();
    let mut hints_by_type = [0u32; 9];
    let (mut deviations, mut recoveries) = (0, 0);
    for logged in &events {
        match &logged.event {
            GuidanceEvent::HintSpoken { hint, .. } => hints_by_type[hint.index()] += 1,
            GuidanceEvent::Bop => deviations += 1,
            GuidanceEvent::RecoveryAnnounced { .. } => recoveries += 1,
            _ => {}
        }
    }
    let end = match &episode.guidance {
        Some(g) if g.phase() == PlayPhase::Finished => EpisodeEnd::Finished,
        Some(g) if g.phase() == PlayPhase::Exited => EpisodeEnd::Exited,
        None if episode.checker.is_complete() => EpisodeEnd::PathCompleted,
        _ => EpisodeEnd::BudgetExhausted,
    };
    EpisodeResult {
        task_id: task.task_id.clone(),
        condition,
        success: matches!(end, EpisodeEnd::Finished | EpisodeEnd::PathCompleted),
        end,
        actions_used: actions.len() as u32,
        hints_total: hints_by_type.iter().sum(),
        hints_by_type,
        deviations,
        recoveries,
        steps_completed: episode.checker.completed(),
        events,
        actions,
        device_trace: episode.device.trace().to_vec(),
    }
}
