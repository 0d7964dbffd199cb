use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::NavAction;
use crate::guidance::text::{parse_announcement, parse_scroll_caption, HeardAnnouncement};
use crate::guidance::{GuidanceEvent, HintType, MoreOptionsChoice};
use crate::model::{normalize_text, NodeId, ScreenTree, TreeIndex};

/// Hints heard in a row without reaching the target before a follower
/// gives up and restarts the task.
const HINT_PATIENCE: u32 = 6;

/// Text agents type into edit fields. Its value never matters.
pub const TYPED_TEXT: &str = "sample";

/// How a simulated user behaves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum Policy {
    /// Follows announcements, touch-explores matching views and activates on a beep.
    Compliant,
    /// Compliant, except each activation goes to a random wrong view with
    /// probability `error_rate`.
    Fallible { error_rate: f64, seed: u64 },
    /// Uniform choice among the gestures legal on the current screen.
    RandomWalk { seed: u64 },
    /// Swipes around and asks for a hint after `threshold` swipes without a beep.
    HintSeeker { threshold: u32, seed: u64 },
}

impl Policy {
    pub fn seed(&self) -> u64 {
        match *self {
            Policy::Compliant => 0,
            Policy::Fallible { seed, .. } | Policy::RandomWalk { seed } | Policy::HintSeeker { seed, .. } => seed,
        }
    }

    /// Same policy with another seed. Compliant has none and is returned as is.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            Policy::Compliant => Policy::Compliant,
            Policy::Fallible { error_rate, .. } => Policy::Fallible { error_rate, seed },
            Policy::RandomWalk { .. } => Policy::RandomWalk { seed },
            Policy::HintSeeker { threshold, .. } => Policy::HintSeeker { threshold, seed },
        }
    }

    /// Seed-free name used in reports, e.g. `fallible(0.2)`.
    pub fn family(&self) -> String {
        match self {
            Policy::Compliant => "compliant".into(),
            Policy::Fallible { error_rate, .. } => format!("fallible({error_rate})"),
            Policy::RandomWalk { .. } => "random_walk".into(),
            Policy::HintSeeker { threshold, .. } => format!("hint_seeker({threshold})"),
        }
    }
}

/// What an agent perceives before choosing its next gesture.
#[derive(Debug, Clone, Copy)]
pub struct Observation<'a> {
    /// Guidance events produced by the previous gesture.
    pub events: &'a [GuidanceEvent],
    pub tree: &'a ScreenTree,
    pub focus: Option<&'a NodeId>,
    pub edit_values: &'a BTreeMap<NodeId, String>,
    pub guided: bool,
}

/// A seeded simulated user.
#[derive(Debug, Clone)]
pub struct Agent {
    policy: Policy,
    rng: ChaCha8Rng,
    follow: Follower,
}

/// Per-step memory of an agent following guidance.
#[derive(Debug, Clone, Default)]
struct Follower {
    target: Option<HeardAnnouncement>,
    fields_typed: usize,
    candidates: Vec<NodeId>,
    candidates_on: Option<String>,
    next_candidate: usize,
    on_target: bool,
    queue: VecDeque<NavAction>,
    hints_without_progress: u32,
    lost: bool,
    scroll_caption: Option<String>,
    scrolled_from: Option<String>,
    swipes: u32,
    touch_mode: bool,
}

impl Agent {
    pub fn new(policy: Policy) -> Self {
        Self { policy, rng: ChaCha8Rng::seed_from_u64(policy.seed()), follow: Follower::default() }
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// Choose the next gesture.
    pub fn next_action(&mut self, obs: &Observation<'_>) -> NavAction {
        if !obs.guided || matches!(self.policy, Policy::RandomWalk { .. }) {
            return self.random_action(obs);
        }
        self.listen(obs);
        if let Some(action) = self.follow.queue.pop_front() {
            return action;
        }
        let Some(target) = self.follow.target.clone() else {
            return NavAction::ActivateHint;
        };

        if self.follow.fields_typed < target.fields_to_fill {
            if let Some(field) = untyped_field(obs) {
                self.follow.fields_typed += 1;
                self.follow.queue.push_back(NavAction::TypeText { text: TYPED_TEXT.into() });
                return NavAction::TouchExplore { node: field };
            }
            self.follow.fields_typed = target.fields_to_fill;
        }

        if self.follow.on_target {
            if let Policy::Fallible { error_rate, .. } = self.policy {
                if self.rng.gen_bool(error_rate.clamp(0.0, 1.0)) {
                    if let Some(wrong) = self.wrong_view(obs) {
                        self.follow.queue.push_back(NavAction::DoubleTapActivate);
                        return NavAction::TouchExplore { node: wrong };
                    }
                }
            }
            return if target.long_press { NavAction::LongPressActivate } else { NavAction::DoubleTapActivate };
        }

        if !self.follow.touch_mode {
            return self.seek_by_swiping();
        }
        if let Some(node) = self.next_candidate(obs, &target.label) {
            return NavAction::TouchExplore { node };
        }
        if let Some(action) = self.scroll_toward_caption(obs) {
            return action;
        }
        if self.follow.lost || self.follow.hints_without_progress >= HINT_PATIENCE {
            self.follow.lost = false;
            self.follow.hints_without_progress = 0;
            return NavAction::ActivateMoreOptions { choice: MoreOptionsChoice::Restart };
        }
        // look over this screen again once the hint is heard
        self.follow.next_candidate = 0;
        NavAction::ActivateHint
    }

    fn listen(&mut self, obs: &Observation<'_>) {
        let f = &mut self.follow;
        f.on_target = false;
        for event in obs.events {
            match event {
                GuidanceEvent::Announcement { text } => {
                    if let Some(heard) = parse_announcement(text) {
                        *f = Follower {
                            target: Some(heard),
                            touch_mode: !matches!(self.policy, Policy::HintSeeker { .. }),
                            ..Follower::default()
                        };
                    }
                }
                GuidanceEvent::Beep => f.on_target = true,
                GuidanceEvent::Bop => {
                    f.queue.clear();
                    f.candidates_on = None;
                }
                GuidanceEvent::HintSpoken { hint, text } => {
                    f.hints_without_progress += 1;
                    f.touch_mode = true;
                    match hint {
                        HintType::D | HintType::E => {
                            f.scroll_caption = parse_scroll_caption(text).map(ToString::to_string);
                            f.scrolled_from = None;
                        }
                        HintType::F => f.lost = true,
                        _ => {}
                    }
                }
                _ => {}
            }
        }
        if f.on_target {
            f.hints_without_progress = 0;
        }
    }

    /// Next unvisited view on this screen whose label matches the announced one.
    fn next_candidate(&mut self, obs: &Observation<'_>, label: &str) -> Option<NodeId> {
        let f = &mut self.follow;
        if f.candidates_on.as_deref() != Some(obs.tree.screen_id.as_str()) {
            f.candidates = matching_views(&obs.tree.index(), label);
            f.candidates_on = Some(obs.tree.screen_id.clone());
            f.next_candidate = 0;
        }
        let node = f.candidates.get(f.next_candidate).cloned()?;
        f.next_candidate += 1;
        Some(node)
    }

    /// Walk to the end of the captioned list and swipe past it to scroll.
    fn scroll_toward_caption(&mut self, obs: &Observation<'_>) -> Option<NavAction> {
        let f = &mut self.follow;
        let caption = f.scroll_caption.clone()?;
        if let Some(from) = f.scrolled_from.take() {
            if from == obs.tree.screen_id {
                // swiping past the end did not scroll: the list is exhausted
                f.scroll_caption = None;
                return None;
            }
        }
        let index = obs.tree.index();
        let key = normalize_text(&caption);
        let container = (0..index.len()).find(|&i| {
            let n = index.node(i);
            n.visible && n.capabilities.is_scrollable() && normalize_text(index.closest_text(i)) == key
        });
        let Some(container) = container else {
            f.scroll_caption = None;
            return None;
        };
        let last = (0..index.len())
            .rev()
            .find(|&i| index.is_descendant(i, container) && is_focusable(&index, i))?;
        let last = index.node(last).id.clone();
        if obs.focus == Some(&last) {
            f.scrolled_from = Some(obs.tree.screen_id.clone());
            Some(NavAction::SwipeNext)
        } else {
            Some(NavAction::TouchExplore { node: last })
        }
    }

    fn seek_by_swiping(&mut self) -> NavAction {
        let Policy::HintSeeker { threshold, .. } = self.policy else {
            return NavAction::ActivateHint;
        };
        if self.follow.swipes >= threshold {
            self.follow.swipes = 0;
            return NavAction::ActivateHint;
        }
        self.follow.swipes += 1;
        if self.rng.gen_bool(0.5) {
            NavAction::SwipeNext
        } else {
            NavAction::SwipePrev
        }
    }

    /// Some interactive view other than the focused one.
    fn wrong_view(&mut self, obs: &Observation<'_>) -> Option<NodeId> {
        let index = obs.tree.index();
        let options: Vec<&NodeId> = (0..index.len())
            .filter(|&i| index.node(i).is_interactive() && is_focusable(&index, i))
            .map(|i| &index.node(i).id)
            .filter(|id| Some(*id) != obs.focus)
            .collect();
        if options.is_empty() {
            return None;
        }
        Some(options[self.rng.gen_range(0..options.len())].clone())
    }

    fn random_action(&mut self, obs: &Observation<'_>) -> NavAction {
        let index = obs.tree.index();
        let mut options = alloc::vec![NavAction::SwipeNext, NavAction::SwipePrev];
        options.extend(
            (0..index.len())
                .filter(|&i| is_focusable(&index, i))
                .map(|i| NavAction::TouchExplore { node: index.node(i).id.clone() }),
        );
        if let Some(node) = obs.focus.and_then(|f| obs.tree.find_node(f)) {
            if node.capabilities.is_clickable() {
                options.push(NavAction::DoubleTapActivate);
            }
            if node.capabilities.is_long_clickable() {
                options.push(NavAction::LongPressActivate);
            }
            if node.capabilities.is_editable() {
                options.push(NavAction::TypeText { text: TYPED_TEXT.into() });
            }
        }
        if obs.guided {
            options.push(NavAction::ActivateHint);
        }
        let pick = self.rng.gen_range(0..options.len());
        options.swap_remove(pick)
    }
}

/// The policy step as a free function.
pub fn agent_policy_step(agent: &mut Agent, obs: &Observation<'_>) -> NavAction {
    agent.next_action(obs)
}

fn is_focusable(index: &TreeIndex<'_>, at: usize) -> bool {
    let n = index.node(at);
    n.visible && n.capabilities.is_focusable()
}

/// Focusable interactive views a listener would take for `label`. Views
/// announced by class name (no text anywhere nearby) match on that instead.
fn matching_views(index: &TreeIndex<'_>, label: &str) -> Vec<NodeId> {
    let key = normalize_text(label);
    let by_text: Vec<NodeId> = (0..index.len())
        .filter(|&i| {
            index.node(i).is_interactive()
                && is_focusable(index, i)
                && normalize_text(index.closest_text(i)) == key
        })
        .map(|i| index.node(i).id.clone())
        .collect();
    if !by_text.is_empty() {
        return by_text;
    }
    (0..index.len())
        .filter(|&i| {
            let n = index.node(i);
            n.is_interactive()
                && is_focusable(index, i)
                && index.closest_text(i).trim().is_empty()
                && normalize_text(n.class_name.rsplit('.').next().unwrap_or_default()) == key
        })
        .map(|i| index.node(i).id.clone())
        .collect()
}

/// First visible editable field on screen that holds no typed value yet.
fn untyped_field(obs: &Observation<'_>) -> Option<NodeId> {
    let index = obs.tree.index();
    (0..index.len())
        .filter(|&i| is_focusable(&index, i) && index.node(i).capabilities.is_editable())
        .map(|i| &index.node(i).id)
        .find(|id| !obs.edit_values.contains_key(*id))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_only_change_seeded_policies() {
        assert_eq!(Policy::Compliant.with_seed(9), Policy::Compliant);
        assert_eq!(Policy::RandomWalk { seed: 1 }.with_seed(9).seed(), 9);
        assert_eq!(Policy::Fallible { error_rate: 0.2, seed: 0 }.family(), "fallible(0.2)");
    }
}
