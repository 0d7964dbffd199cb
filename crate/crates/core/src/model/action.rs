use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::{Capabilities, Capability};

/// An interaction performed on a view.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ActionKind {
    Click,
    LongClick,
    SetText { value: String },
    ScrollForward,
    ScrollBackward,
}

/// [`ActionKind`] without its payload; keys app-graph transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionType {
    Click,
    LongClick,
    SetText,
    ScrollForward,
    ScrollBackward,
}

impl ActionKind {
    pub fn action_type(&self) -> ActionType {
        match self {
            ActionKind::Click => ActionType::Click,
            ActionKind::LongClick => ActionType::LongClick,
            ActionKind::SetText { .. } => ActionType::SetText,
            ActionKind::ScrollForward => ActionType::ScrollForward,
            ActionKind::ScrollBackward => ActionType::ScrollBackward,
        }
    }

    pub fn set_text(value: impl Into<String>) -> Self {
        ActionKind::SetText { value: value.into() }
    }
}

impl ActionType {
    pub const fn required_capability(self) -> Capability {
        match self {
            ActionType::Click => Capability::Clickable,
            ActionType::LongClick => Capability::LongClickable,
            ActionType::SetText => Capability::Editable,
            ActionType::ScrollForward | ActionType::ScrollBackward => Capability::Scrollable,
        }
    }

    pub const fn permitted_by(self, caps: &Capabilities) -> bool {
        caps.contains(self.required_capability())
    }

    /// Click or long click: the activations that advance a task.
    pub const fn is_activation(self) -> bool {
        matches!(self, ActionType::Click | ActionType::LongClick)
    }

    pub const fn name(self) -> &'static str {
        match self {
            ActionType::Click => "click",
            ActionType::LongClick => "long_click",
            ActionType::SetText => "set_text",
            ActionType::ScrollForward => "scroll_forward",
            ActionType::ScrollBackward => "scroll_backward",
        }
    }
}

impl fmt::Display for ActionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
