use alloc::string::String;

use crate::authoring::Phase;
use crate::model::{ActionType, Bounds, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown screen {0}")]
    UnknownScreen(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SectorError {
    #[error("bounds {0:?} are malformed or fall outside a {1}x{2} screen")]
    OutsideScreen(Bounds, i32, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuthoringError {
    #[error("operation not allowed in phase {0:?}")]
    WrongPhase(Phase),
    #[error("interface description must not be empty")]
    EmptyDescription,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("node {0} is not visible")]
    NotVisible(NodeId),
    #[error("node {node} does not permit {action}")]
    ActionNotPermitted { node: NodeId, action: ActionType },
    #[error("expected {expected} edit prompts, got {got}")]
    PromptCountMismatch { expected: usize, got: usize },
    #[error("edit prompt {0} is empty")]
    EmptyPrompt(usize),
    #[error("a task needs at least one step")]
    NoSteps,
    #[error("a title is required")]
    MissingTitle,
    #[error("a description is required")]
    MissingDescription,
    #[error("request {request} targets app {request_app}, not {app}")]
    RequestAppMismatch { request: String, request_app: String, app: String },
    #[error("request {0} has an empty description")]
    EmptyRequest(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaythroughError {
    #[error("package is for app {package_app}, device runs {device_app}")]
    AppMismatch { package_app: String, device_app: String },
    #[error("package has no steps")]
    EmptyPackage,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NavError {
    #[error("activation requires a focused node")]
    NoFocus,
    #[error("node {0} is not a visible focusable node on this screen")]
    NotFocusable(NodeId),
    #[error("node {0} is not editable")]
    NotEditable(NodeId),
    #[error(transparent)]
    Model(#[from] ModelError),
}
