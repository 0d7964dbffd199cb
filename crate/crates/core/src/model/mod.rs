//! Accessibility-tree data model: views, screens, actions and app graphs.

mod action;
mod bounds;
mod graph;
mod node;
mod screen;
mod text;

use alloc::string::String;

pub use action::{ActionKind, ActionType};
pub use bounds::Bounds;
pub use graph::{AppGraph, EditEffect, Transition};
pub use node::{Capabilities, Capability, NodeId, ViewNode};
pub use screen::{IndexedNode, ScreenTree, TreeIndex};
pub use text::normalize_text;

/// A broken invariant found while validating a screen or app graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("screen {screen}: duplicate node id {node}")]
    DuplicateNodeId { screen: String, node: NodeId },
    #[error("screen {screen}: node {node} has malformed bounds")]
    MalformedBounds { screen: String, node: NodeId },
    #[error("screen {screen}: node {node} lies outside the screen")]
    BoundsOutsideScreen { screen: String, node: NodeId },
    #[error("screen {screen}: editable node {node} is not focusable")]
    EditableNotFocusable { screen: String, node: NodeId },
    #[error("duplicate screen id {0}")]
    DuplicateScreen(String),
    #[error("entry screen {0} does not exist")]
    MissingEntryScreen(String),
    #[error("transition from unknown screen {0}")]
    UnknownTransitionScreen(String),
    #[error("transition from unknown node {node} on screen {screen}")]
    UnknownTransitionNode { screen: String, node: NodeId },
    #[error("transition from {screen}/{node} targets unknown screen {target}")]
    UnknownTransitionTarget { screen: String, node: NodeId, target: String },
    #[error("node {node} on screen {screen} cannot perform {action}")]
    CapabilityMismatch { screen: String, node: NodeId, action: ActionType },
    #[error("duplicate transition for {screen}/{node}/{action}")]
    DuplicateTransition { screen: String, node: NodeId, action: ActionType },
    #[error("edit effect on {screen}/{node} does not name an editable node")]
    EditEffectNotEditable { screen: String, node: NodeId },
}
