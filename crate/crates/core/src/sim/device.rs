use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, NavError};
use crate::guidance::{Device, MoreOptionsChoice};
use crate::model::{ActionType, AppGraph, NodeId, ScreenTree, TreeIndex};

/// Screen-reader gestures available to a simulated user.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum NavAction {
    SwipeNext,
    SwipePrev,
    TouchExplore { node: NodeId },
    DoubleTapActivate,
    LongPressActivate,
    TypeText { text: String },
    ActivateHint,
    ActivateMoreOptions { choice: MoreOptionsChoice },
}

/// What the device did in response to a gesture. The sequence of these is
/// the device trace used by the path checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum DeviceEvent {
    FocusMoved { screen: String, node: NodeId },
    Activated { screen: String, node: NodeId, action: ActionType, target: String },
    TextTyped { screen: String, node: NodeId, text: String, target: String },
    Scrolled { screen: String, node: NodeId, action: ActionType, target: String },
    HintRequested,
    MoreOptions { choice: MoreOptionsChoice },
    Reset { screen: String },
}

/// A phone running one app graph under a sequential screen reader.
#[derive(Debug, Clone)]
pub struct SimDevice {
    app: Arc<AppGraph>,
    current_screen: String,
    focus: Option<NodeId>,
    edit_values: BTreeMap<NodeId, String>,
    trace: Vec<DeviceEvent>,
}

impl SimDevice {
    pub fn new(app: Arc<AppGraph>) -> Result<Self, ModelError> {
        if app.entry().is_none() {
            return Err(ModelError::UnknownScreen(app.entry_screen.clone()));
        }
        Ok(Self {
            current_screen: app.entry_screen.clone(),
            app,
            focus: None,
            edit_values: BTreeMap::new(),
            trace: Vec::new(),
        })
    }

    pub fn app(&self) -> &Arc<AppGraph> {
        &self.app
    }

    pub fn current_screen_id(&self) -> &str {
        &self.current_screen
    }

    pub fn focus(&self) -> Option<&NodeId> {
        self.focus.as_ref()
    }

    pub fn edit_values(&self) -> &BTreeMap<NodeId, String> {
        &self.edit_values
    }

    pub fn trace(&self) -> &[DeviceEvent] {
        &self.trace
    }

    /// Visible focusable nodes in pre-order: the swipe order.
    pub fn focus_order(&self) -> Vec<NodeId> {
        let index = self.screen().index();
        focusable_positions(&index)
            .into_iter()
            .map(|i| index.node(i).id.clone())
            .collect()
    }

    fn enter(&mut self, screen: &str) {
        if screen != self.current_screen {
            self.current_screen = String::from(screen);
            self.focus = None;
            self.edit_values.clear();
        }
    }

    fn record(&mut self, out: &mut Vec<DeviceEvent>, event: DeviceEvent) {
        self.trace.push(event.clone());
        out.push(event);
    }

    /// Apply one gesture.
    pub fn nav_step(&mut self, action: &NavAction) -> Result<Vec<DeviceEvent>, NavError> {
        let mut out = Vec::new();
        match action {
            NavAction::SwipeNext => self.swipe(true, &mut out),
            NavAction::SwipePrev => self.swipe(false, &mut out),
            NavAction::TouchExplore { node } => {
                let tree = self.screen();
                let ok = tree
                    .find_node(node)
                    .is_some_and(|n| n.visible && n.capabilities.is_focusable());
                if !ok {
                    return Err(NavError::NotFocusable(node.clone()));
                }
                self.focus = Some(node.clone());
                let screen = self.current_screen.clone();
                self.record(&mut out, DeviceEvent::FocusMoved { screen, node: node.clone() });
            }
            NavAction::DoubleTapActivate => self.activate(ActionType::Click, &mut out)?,
            NavAction::LongPressActivate => self.activate(ActionType::LongClick, &mut out)?,
            NavAction::TypeText { text } => {
                let node = self.focus.clone().ok_or(NavError::NoFocus)?;
                let editable = self.screen().find_node(&node).is_some_and(|n| n.capabilities.is_editable());
                if !editable {
                    return Err(NavError::NotEditable(node));
                }
                let screen = self.current_screen.clone();
                let target = self.destination(&node, ActionType::SetText);
                self.edit_values.insert(node.clone(), text.clone());
                self.record(
                    &mut out,
                    DeviceEvent::TextTyped { screen, node, text: text.clone(), target: target.clone() },
                );
                self.enter(&target);
            }
            NavAction::ActivateHint => self.record(&mut out, DeviceEvent::HintRequested),
            NavAction::ActivateMoreOptions { choice } => {
                self.record(&mut out, DeviceEvent::MoreOptions { choice: *choice })
            }
        }
        Ok(out)
    }

    fn destination(&self, node: &NodeId, kind: ActionType) -> String {
        String::from(self.app.transition(&self.current_screen, node, kind).unwrap_or(&self.current_screen))
    }

    /// Activation of the focused node. Nodes lacking the capability ignore it.
    fn activate(&mut self, kind: ActionType, out: &mut Vec<DeviceEvent>) -> Result<(), NavError> {
        let node = self.focus.clone().ok_or(NavError::NoFocus)?;
        let permitted = self
            .screen()
            .find_node(&node)
            .is_some_and(|n| n.visible && kind.permitted_by(&n.capabilities));
        if !permitted {
            return Ok(());
        }
        let screen = self.current_screen.clone();
        let target = self.destination(&node, kind);
        self.record(out, DeviceEvent::Activated { screen, node, action: kind, target: target.clone() });
        self.enter(&target);
        Ok(())
    }

    /// Move focus along the swipe order with wraparound. Swiping past the
    /// last item of a scrollable list scrolls it instead, when the app graph
    /// has a scroll transition for that list.
    fn swipe(&mut self, forward: bool, out: &mut Vec<DeviceEvent>) {
        let app = Arc::clone(&self.app);
        let tree = app.screen(&self.current_screen).expect("device stays on known screens");
        let index = tree.index();
        let order = focusable_positions(&index);
        if order.is_empty() {
            return;
        }
        let current = self.focus.as_ref().and_then(|f| index.position(f)).and_then(|p| {
            order.iter().position(|&o| o == p)
        });
        let next = match current {
            None if forward => order[0],
            None => order[order.len() - 1],
            Some(at) => {
                if let Some(container) = scroll_boundary(&index, &order, order[at], forward) {
                    let kind = if forward { ActionType::ScrollForward } else { ActionType::ScrollBackward };
                    let id = index.node(container).id.clone();
                    if let Some(target) = app.transition(&self.current_screen, &id, kind) {
                        self.scroll_to(tree, id, kind, target, forward, out);
                        return;
                    }
                }
                let n = order.len();
                order[if forward { (at + 1) % n } else { (at + n - 1) % n }]
            }
        };
        let node = index.node(next).id.clone();
        self.focus = Some(node.clone());
        let screen = self.current_screen.clone();
        self.record(out, DeviceEvent::FocusMoved { screen, node });
    }

    fn scroll_to(
        &mut self,
        from: &ScreenTree,
        container: NodeId,
        kind: ActionType,
        target: &str,
        forward: bool,
        out: &mut Vec<DeviceEvent>,
    ) {
        let screen = from.screen_id.clone();
        self.record(
            out,
            DeviceEvent::Scrolled { screen, node: container.clone(), action: kind, target: target.into() },
        );
        self.enter(target);
        let app = Arc::clone(&self.app);
        let tree = app.screen(target).expect("validated transition target");
        let index = tree.index();
        let order = focusable_positions(&index);
        // the list on the new page keeps its id, or at least its caption
        let from_index = from.index();
        let caption = from_index.position(&container).map(|c| from_index.closest_text(c));
        let same_list = index.position(&container).or_else(|| {
            let caption = caption?;
            (0..index.len()).find(|&i| index.node(i).capabilities.is_scrollable() && index.closest_text(i) == caption)
        });
        let inside: Vec<usize> = match same_list {
            Some(c) => order.iter().copied().filter(|&p| index.is_descendant(p, c)).collect(),
            None => order.clone(),
        };
        let landing = if forward { inside.first() } else { inside.last() };
        if let Some(&p) = landing {
            let node = index.node(p).id.clone();
            self.focus = Some(node.clone());
            self.record(out, DeviceEvent::FocusMoved { screen: target.into(), node });
        }
    }
}

fn focusable_positions(index: &TreeIndex<'_>) -> Vec<usize> {
    (0..index.len())
        .filter(|&i| {
            let n = index.node(i);
            n.visible && n.capabilities.is_focusable()
        })
        .collect()
}

/// Nearest scrollable ancestor of `focused` when `focused` is its last
/// (forward) or first (backward) focusable descendant.
fn scroll_boundary(index: &TreeIndex<'_>, order: &[usize], focused: usize, forward: bool) -> Option<usize> {
    let container = index.ancestors(focused).find(|&a| {
        let n = index.node(a);
        n.visible && n.capabilities.is_scrollable()
    })?;
    let inside = |p: &usize| index.is_descendant(*p, container);
    let edge = if forward { order.iter().copied().rev().find(inside) } else { order.iter().copied().find(inside) };
    (edge == Some(focused)).then_some(container)
}

impl Device for SimDevice {
    fn app_id(&self) -> &str {
        &self.app.app_id
    }

    fn reset(&mut self) {
        self.current_screen = self.app.entry_screen.clone();
        self.focus = None;
        self.edit_values.clear();
        let screen = self.current_screen.clone();
        self.trace.push(DeviceEvent::Reset { screen });
    }

    fn screen(&self) -> &ScreenTree {
        self.app
            .screen(&self.current_screen)
            .expect("device stays on known screens")
    }
}
